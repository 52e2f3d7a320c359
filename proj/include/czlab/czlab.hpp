#ifndef CZLAB_CZLAB_HPP
#define CZLAB_CZLAB_HPP

#include "czlab/core.hpp"
#include "czlab/cube.hpp"
#include "czlab/measure.hpp"
#include "czlab/geometry.hpp"
#include "czlab/whitney.hpp"
#include "czlab/operators.hpp"
#include "czlab/testfn.hpp"
#include "czlab/tb.hpp"
#include "czlab/report.hpp"
#include "czlab/config.hpp"
#include "czlab/commands.hpp"

#endif  // CZLAB_CZLAB_HPP
