#pragma once

#include "qcf/asymptotics.hpp"
#include "qcf/cfrac.hpp"
#include "qcf/convergents.hpp"
#include "qcf/core.hpp"
#include "qcf/genfun.hpp"
#include "qcf/measure.hpp"
#include "qcf/moments.hpp"
#include "qcf/qseries.hpp"
#include "qcf/quadrature.hpp"
#include "qcf/recurrence.hpp"
