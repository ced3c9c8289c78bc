#include "relcap/series.hpp"

#include <algorithm>
#include <stdexcept>

namespace relcap {

Series::Series(int order) : c_(static_cast<std::size_t>(std::max(0, order)) + 1) {}

Series::Series(int order, std::vector<Complex> coeffs) : Series(order) {
  for (std::size_t k = 0; k < coeffs.size() && k < c_.size(); ++k) {
    c_[k] = coeffs[k];
  }
}

Series Series::constant(int order, Complex c) {
  Series s(order);
  s.c_[0] = c;
  return s;
}

Series Series::variable(int order) {
  Series s(order);
  if (order >= 1) {
    s.c_[1] = 1.0;
  }
  return s;
}

Series Series::operator-() const {
  Series out(order());
  for (int k = 0; k <= order(); ++k) {
    out.c_[k] = -c_[k];
  }
  return out;
}

Series operator+(const Series& a, const Series& b) {
  Series out(std::min(a.order(), b.order()));
  for (int k = 0; k <= out.order(); ++k) {
    out.c_[k] = a.c_[k] + b.c_[k];
  }
  return out;
}

Series operator-(const Series& a, const Series& b) { return a + (-b); }

Series operator*(const Series& a, const Series& b) {
  Series out(std::min(a.order(), b.order()));
  for (int n = 0; n <= out.order(); ++n) {
    Complex s{};
    for (int k = 0; k <= n; ++k) {
      s += a.c_[k] * b.c_[n - k];
    }
    out.c_[n] = s;
  }
  return out;
}

Series operator/(const Series& a, const Series& b) { return a * b.reciprocal(); }

Series operator+(const Series& a, Complex s) {
  Series out = a;
  out.c_[0] += s;
  return out;
}

Series operator*(const Series& a, Complex s) {
  Series out = a;
  for (auto& c : out.c_) {
    c *= s;
  }
  return out;
}

Series Series::reciprocal() const {
  if (c_[0] == Complex{}) {
    throw std::domain_error("series reciprocal needs a nonzero constant term");
  }
  Series out(order());
  out.c_[0] = 1.0 / c_[0];
  for (int n = 1; n <= order(); ++n) {
    Complex s{};
    for (int k = 1; k <= n; ++k) {
      s += c_[k] * out.c_[n - k];
    }
    out.c_[n] = -s / c_[0];
  }
  return out;
}

Series Series::derivative() const {
  Series out(std::max(0, order() - 1));
  for (int k = 1; k <= order(); ++k) {
    out.c_[k - 1] = static_cast<double>(k) * c_[k];
  }
  return out;
}

Series Series::integral(Complex c0) const {
  Series out(order());
  out.c_[0] = c0;
  for (int k = 1; k <= order(); ++k) {
    out.c_[k] = c_[k - 1] / static_cast<double>(k);
  }
  return out;
}

Series compose(const Series& f, const Series& g) {
  if (g[0] != Complex{}) {
    throw std::domain_error("inner series of a composition needs a zero constant term");
  }
  const int n = std::min(f.order(), g.order());
  Series out = Series::constant(n, f[n]);
  for (int k = n - 1; k >= 0; --k) {
    out = out * g + f[k];
  }
  return out;
}

Series reverse(const Series& f) {
  if (f[0] != Complex{} || f[1] == Complex{}) {
    throw std::domain_error("series reversion needs f(0) = 0 and f'(0) != 0");
  }
  const int n = f.order();
  Series g(n);
  g[1] = 1.0 / f[1];
  for (int k = 2; k <= n; ++k) {
    const Series fg = compose(f, g);
    g[k] = -fg[k] / f[1];
  }
  return g;
}

Series exp(const Series& f) {
  const int n = f.order();
  Series out(n);
  out[0] = std::exp(f[0]);
  for (int m = 1; m <= n; ++m) {
    Complex s{};
    for (int k = 1; k <= m; ++k) {
      s += static_cast<double>(k) * f[k] * out[m - k];
    }
    out[m] = s / static_cast<double>(m);
  }
  return out;
}

Series log(const Series& f) {
  if (f[0] == Complex{}) {
    throw std::domain_error("series log needs a nonzero constant term");
  }
  const Series d = f.derivative() / Series(f.order() - 1, f.coeffs());
  return d.integral(std::log(f[0]));
}

Series pow(const Series& f, Complex exponent) { return exp(log(f) * exponent); }

Series sqrt(const Series& f) { return pow(f, 0.5); }

}  // namespace relcap
