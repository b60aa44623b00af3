#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace gcx {

using integer = boost::multiprecision::cpp_int;
using rational = boost::multiprecision::cpp_rational;

} // namespace gcx
