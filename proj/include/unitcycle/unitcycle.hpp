#pragma once

#include "unitcycle/avoidance.hpp"
#include "unitcycle/cycles.hpp"
#include "unitcycle/errors.hpp"
#include "unitcycle/exactnum.hpp"
#include "unitcycle/lenstra.hpp"
#include "unitcycle/relsearch.hpp"
#include "unitcycle/serialize.hpp"
#include "unitcycle/sring.hpp"
#include "unitcycle/survey.hpp"
