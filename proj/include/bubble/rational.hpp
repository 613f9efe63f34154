#ifndef BUBBLE_RATIONAL_HPP
#define BUBBLE_RATIONAL_HPP

#include <cstdint>
#include <string>
#include <type_traits>

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Core>

// Eigen 3.4 matrices expose const_iterator, which sends Boost 1.74's byte
// container probe into iterator_traits<void> during ADL on mixed operators.
namespace boost::multiprecision::detail {
template <class D>
std::true_type derives_from_eigen_base(const Eigen::EigenBase<D> *);
std::false_type derives_from_eigen_base(...);

template <class C>
  requires(decltype(derives_from_eigen_base(static_cast<const C *>(nullptr)))::value)
struct is_byte_container<C> : boost::false_type {};
} // namespace boost::multiprecision::detail

namespace bubble {

/// Exact arbitrary-precision rational. Expression templates are off so the
/// type behaves as a plain value inside Eigen matrices.
using Rational =
    boost::multiprecision::number<boost::multiprecision::cpp_rational_backend,
                                  boost::multiprecision::et_off>;
using Integer =
    boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                  boost::multiprecision::et_off>;

inline Rational make_rational(std::int64_t num, std::int64_t den = 1) {
  return Rational(Integer(num), Integer(den));
}

inline Integer numerator_of(const Rational &q) {
  return boost::multiprecision::numerator(q);
}
inline Integer denominator_of(const Rational &q) {
  return boost::multiprecision::denominator(q);
}

inline double to_double(const Rational &q) { return q.convert_to<double>(); }
inline double to_double(double x) { return x; }

inline Rational pow(const Rational &base, int exponent) {
  Rational result = 1;
  Rational factor = base;
  bool invert = exponent < 0;
  unsigned e = invert ? static_cast<unsigned>(-exponent)
                      : static_cast<unsigned>(exponent);
  while (e != 0) {
    if (e & 1U) result *= factor;
    factor *= factor;
    e >>= 1U;
  }
  return invert ? Rational(1) / result : result;
}

inline Integer ipow(std::int64_t base, int exponent) {
  Integer result = 1;
  for (int i = 0; i < exponent; ++i) result *= base;
  return result;
}

inline std::string to_string(const Rational &q) { return q.str(); }

} // namespace bubble

#endif // BUBBLE_RATIONAL_HPP
