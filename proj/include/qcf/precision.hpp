#pragma once

/// \file
/// Scalar types beyond double: a 440-digit binary float with its complex
/// companion, for checks whose errors fall far below double epsilon, and an
/// exact rational for the polynomial identities.

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include "qcf/core.hpp"

namespace qcf {

using hp_real = mp::number<mp::cpp_bin_float<440>, mp::et_off>;
using hp_complex = complex_t<hp_real>;
using rational = mp::number<mp::cpp_rational_backend, mp::et_off>;

}  // namespace qcf
