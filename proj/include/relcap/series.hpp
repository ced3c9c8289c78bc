#pragma once

#include <complex>
#include <vector>

namespace relcap {

using Complex = std::complex<double>;

/// Truncated power series c[0] + c[1] x + ... + c[N] x^N. Binary operations
/// truncate to the smaller order.
class Series {
 public:
  explicit Series(int order);
  Series(int order, std::vector<Complex> coeffs);

  static Series constant(int order, Complex c);
  static Series variable(int order);  // the series x

  int order() const { return static_cast<int>(c_.size()) - 1; }
  Complex operator[](int k) const { return k < static_cast<int>(c_.size()) ? c_[k] : Complex{}; }
  Complex& operator[](int k) { return c_[k]; }
  const std::vector<Complex>& coeffs() const { return c_; }

  Series operator-() const;
  friend Series operator+(const Series& a, const Series& b);
  friend Series operator-(const Series& a, const Series& b);
  friend Series operator*(const Series& a, const Series& b);
  friend Series operator/(const Series& a, const Series& b);
  friend Series operator+(const Series& a, Complex s);
  friend Series operator*(const Series& a, Complex s);
  friend Series operator*(Complex s, const Series& a) { return a * s; }

  Series reciprocal() const;
  Series derivative() const;
  /// Antiderivative with constant term `c0` (top coefficient dropped).
  Series integral(Complex c0 = {}) const;

 private:
  std::vector<Complex> c_;
};

/// f(g(x)); g must have zero constant term.
Series compose(const Series& f, const Series& g);
/// g with f(g(x)) = x; f needs f[0] = 0 and f[1] != 0.
Series reverse(const Series& f);
Series exp(const Series& f);
/// Principal branch at the constant term; f[0] != 0.
Series log(const Series& f);
Series pow(const Series& f, Complex exponent);
Series sqrt(const Series& f);

}  // namespace relcap
