#include "flexkit/poly.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <string>

#include "flexkit/error.hpp"

namespace flexkit {

namespace {

constexpr double kCanonicalDrop = 1e-14;

Complex ipow(Complex base, int e) {
  Complex r = 1.0;
  for (int k = 0; k < e; ++k) r *= base;
  return r;
}

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

// strtod on a string_view; returns number of characters consumed (0 on failure).
std::size_t read_double(std::string_view text, double& out) {
  if (text.empty()) return 0;
  const char c0 = text.front();
  if (!(std::isdigit(static_cast<unsigned char>(c0)) || c0 == '.' || c0 == '+' || c0 == '-'))
    return 0;
  std::string buf(text);
  char* end = nullptr;
  out = std::strtod(buf.c_str(), &end);
  const auto used = static_cast<std::size_t>(end - buf.c_str());
  if (used == 0) return 0;
  // reject "inf", "nan", hex floats and similar
  for (std::size_t i = 0; i < used; ++i) {
    const char ch = buf[i];
    if (!(std::isdigit(static_cast<unsigned char>(ch)) || ch == '.' || ch == '+' || ch == '-' ||
          ch == 'e' || ch == 'E'))
      return 0;
  }
  return used;
}

}  // namespace

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Parse: return "ParseError";
    case ErrorKind::ZeroPolynomial: return "ZeroPolynomial";
    case ErrorKind::DegenerateLeadingCoefficient: return "DegenerateLeadingCoefficient";
    case ErrorKind::NonConvergence: return "NonConvergence";
    case ErrorKind::AllCoefficientsBelowTolerance: return "AllCoefficientsBelowTolerance";
    case ErrorKind::NotHomogeneous: return "NotHomogeneous";
    case ErrorKind::NotQuartic: return "NotQuartic";
    case ErrorKind::SingularPoint: return "SingularPoint";
    case ErrorKind::WeightSumMismatch: return "WeightSumMismatch";
    case ErrorKind::NonInvariantCurve: return "NonInvariantCurve";
    case ErrorKind::MixedWeightOrbit: return "MixedWeightOrbit";
    case ErrorKind::NotSmooth: return "NotSmooth";
    case ErrorKind::Unsupported: return "Unsupported";
  }
  return "Error";
}

char axis_name(Axis axis) { return "xyz"[static_cast<int>(axis)]; }

Complex parse_complex(std::string_view text) {
  auto fail = [&]() -> Complex {
    throw Error(ErrorKind::Parse, "invalid complex literal '" + std::string(text) + "'");
  };
  if (text.empty()) return fail();
  for (char ch : text)
    if (std::isspace(static_cast<unsigned char>(ch))) return fail();

  double re = 0.0;
  const std::size_t n1 = read_double(text, re);
  if (n1 == 0) return fail();
  std::string_view rest = text.substr(n1);
  if (rest.empty()) return {re, 0.0};
  if (rest == "i") return {0.0, re};
  if (rest.front() != '+' && rest.front() != '-') return fail();
  double im = 0.0;
  const std::size_t n2 = read_double(rest, im);
  if (n2 == 0 || rest.substr(n2) != "i") return fail();
  return {re, im};
}

std::string format_complex(Complex c) {
  std::string im = format_double(c.imag());
  if (!std::signbit(c.imag())) im = "+" + im;
  return "(" + format_double(c.real()) + im + "i)";
}

// ---------------------------------------------------------------- UPoly

UPoly::UPoly(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) {
  while (!coeffs_.empty() && coeffs_.back() == Complex(0.0, 0.0)) coeffs_.pop_back();
}

UPoly UPoly::from_roots(std::span<const Complex> roots, Complex leading) {
  std::vector<Complex> c{leading};
  for (const Complex& r : roots) {
    std::vector<Complex> next(c.size() + 1, 0.0);
    for (std::size_t k = 0; k < c.size(); ++k) {
      next[k + 1] += c[k];
      next[k] -= r * c[k];
    }
    c = std::move(next);
  }
  return UPoly(std::move(c));
}

Complex UPoly::coeff(int k) const {
  if (k < 0 || k >= static_cast<int>(coeffs_.size())) return 0.0;
  return coeffs_[static_cast<std::size_t>(k)];
}

Complex UPoly::leading() const { return coeffs_.empty() ? Complex(0.0) : coeffs_.back(); }

Complex UPoly::operator()(Complex x) const {
  Complex acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

UPoly UPoly::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<Complex> d(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = static_cast<double>(k) * coeffs_[k];
  return UPoly(std::move(d));
}

UPoly UPoly::taylor_shift(Complex at) const {
  // repeated synthetic division by (x - at)
  std::vector<Complex> c = coeffs_;
  const std::size_t n = c.size();
  for (std::size_t k = 0; k + 1 < n; ++k)
    for (std::size_t j = n - 1; j > k; --j) c[j - 1] += at * c[j];
  return UPoly(std::move(c));
}

UPoly UPoly::trimmed(double rel) const {
  const double cutoff = rel * max_coeff();
  std::vector<Complex> c = coeffs_;
  while (!c.empty() && std::abs(c.back()) <= cutoff) c.pop_back();
  return UPoly(std::move(c));
}

double UPoly::max_coeff() const {
  double m = 0.0;
  for (const auto& c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

UPoly operator+(const UPoly& p, const UPoly& q) {
  std::vector<Complex> c(std::max(p.coeffs_.size(), q.coeffs_.size()), 0.0);
  for (std::size_t k = 0; k < p.coeffs_.size(); ++k) c[k] += p.coeffs_[k];
  for (std::size_t k = 0; k < q.coeffs_.size(); ++k) c[k] += q.coeffs_[k];
  return UPoly(std::move(c));
}

UPoly operator-(const UPoly& p, const UPoly& q) { return p + Complex(-1.0) * q; }

UPoly operator*(const UPoly& p, const UPoly& q) {
  if (p.is_zero() || q.is_zero()) return {};
  std::vector<Complex> c(p.coeffs_.size() + q.coeffs_.size() - 1, 0.0);
  for (std::size_t i = 0; i < p.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < q.coeffs_.size(); ++j) c[i + j] += p.coeffs_[i] * q.coeffs_[j];
  return UPoly(std::move(c));
}

UPoly operator*(Complex s, const UPoly& p) {
  std::vector<Complex> c = p.coeffs_;
  for (auto& x : c) x *= s;
  return UPoly(std::move(c));
}

std::string UPoly::to_string(char var) const {
  if (coeffs_.empty()) return format_complex(0.0);
  std::string out;
  for (std::size_t k = coeffs_.size(); k-- > 0;) {
    if (coeffs_[k] == Complex(0.0)) continue;
    if (!out.empty()) out += " + ";
    out += format_complex(coeffs_[k]);
    out += "*";
    out += var;
    out += "^" + std::to_string(k);
  }
  return out.empty() ? format_complex(0.0) : out;
}

// ---------------------------------------------------------------- MPoly

bool GradedLex::operator()(const Monomial& lhs, const Monomial& rhs) const {
  const int dl = lhs[0] + lhs[1] + lhs[2];
  const int dr = rhs[0] + rhs[1] + rhs[2];
  if (dl != dr) return dl > dr;
  return lhs > rhs;
}

MPoly::MPoly(Terms terms) : terms_(std::move(terms)) { canonicalize(); }

void MPoly::canonicalize() {
  double m = 0.0;
  for (const auto& [mono, c] : terms_) m = std::max(m, std::abs(c));
  const double cutoff = kCanonicalDrop * m;
  for (auto it = terms_.begin(); it != terms_.end();) {
    const double a = std::abs(it->second);
    if (a == 0.0 || a < cutoff)
      it = terms_.erase(it);
    else
      ++it;
  }
}

MPoly MPoly::constant(Complex c) { return monomial(c, 0, 0, 0); }

MPoly MPoly::variable(Axis axis) {
  Monomial m{0, 0, 0};
  m[static_cast<int>(axis)] = 1;
  return MPoly(Terms{{m, 1.0}});
}

MPoly MPoly::monomial(Complex c, int i, int j, int k) {
  if (i < 0 || j < 0 || k < 0) throw Error(ErrorKind::Unsupported, "negative exponent");
  return MPoly(Terms{{Monomial{i, j, k}, c}});
}

MPoly MPoly::kuribayashi(Complex a, Complex b, Complex c) {
  Terms t;
  t[{4, 0, 0}] = 1.0;
  t[{0, 4, 0}] = 1.0;
  t[{0, 0, 4}] = 1.0;
  t[{2, 2, 0}] = a;
  t[{2, 0, 2}] = b;
  t[{0, 2, 2}] = c;
  return MPoly(std::move(t));
}

int MPoly::degree() const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, m[0] + m[1] + m[2]);
  return d;
}

int MPoly::degree_in(Axis axis) const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, m[static_cast<int>(axis)]);
  return d;
}

bool MPoly::is_homogeneous() const {
  if (terms_.empty()) return true;
  const int d = degree();
  return std::all_of(terms_.begin(), terms_.end(),
                     [d](const auto& kv) { return kv.first[0] + kv.first[1] + kv.first[2] == d; });
}

Complex MPoly::coeff(int i, int j, int k) const {
  auto it = terms_.find(Monomial{i, j, k});
  return it == terms_.end() ? Complex(0.0) : it->second;
}

double MPoly::coeff_norm() const {
  double s = 0.0;
  for (const auto& [m, c] : terms_) s += std::abs(c);
  return s;
}

Complex MPoly::operator()(Complex x, Complex y, Complex z) const {
  if (terms_.empty()) return 0.0;
  const int d = std::max(0, degree());
  std::vector<Complex> px(d + 1), py(d + 1), pz(d + 1);
  px[0] = py[0] = pz[0] = 1.0;
  for (int k = 1; k <= d; ++k) {
    px[k] = px[k - 1] * x;
    py[k] = py[k - 1] * y;
    pz[k] = pz[k - 1] * z;
  }
  Complex acc = 0.0;
  for (const auto& [m, c] : terms_) acc += c * px[m[0]] * py[m[1]] * pz[m[2]];
  return acc;
}

MPoly MPoly::partial(Axis axis) const {
  const int a = static_cast<int>(axis);
  Terms out;
  for (const auto& [m, c] : terms_) {
    if (m[a] == 0) continue;
    Monomial n = m;
    n[a] -= 1;
    out[n] += static_cast<double>(m[a]) * c;
  }
  return MPoly(std::move(out));
}

MPoly MPoly::substitute(Axis axis, Complex value) const {
  const int a = static_cast<int>(axis);
  Terms out;
  for (const auto& [m, c] : terms_) {
    Monomial n = m;
    n[a] = 0;
    out[n] += c * ipow(value, m[a]);
  }
  return MPoly(std::move(out));
}

MPoly MPoly::compose(const Mat3& mat) const {
  const int d = std::max(0, degree());
  // powers[i][k] = (row i of mat . (x, y, z))^k
  std::array<std::vector<MPoly>, 3> powers;
  for (int i = 0; i < 3; ++i) {
    Terms lin;
    lin[{1, 0, 0}] = mat[i][0];
    lin[{0, 1, 0}] = mat[i][1];
    lin[{0, 0, 1}] = mat[i][2];
    const MPoly l(std::move(lin));
    powers[i].push_back(constant(1.0));
    for (int k = 1; k <= d; ++k) powers[i].push_back(powers[i].back() * l);
  }
  MPoly out;
  for (const auto& [m, c] : terms_) out = out + c * (powers[0][m[0]] * powers[1][m[1]] * powers[2][m[2]]);
  return out;
}

UPoly MPoly::as_univariate(Axis axis) const {
  const int a = static_cast<int>(axis);
  std::vector<Complex> c(std::max(0, degree_in(axis) + 1), 0.0);
  for (const auto& [m, v] : terms_) {
    for (int k = 0; k < 3; ++k)
      if (k != a && m[k] != 0)
        throw Error(ErrorKind::Unsupported,
                    std::string("polynomial depends on a variable other than ") + axis_name(axis));
    c[m[a]] += v;
  }
  return UPoly(std::move(c));
}

std::vector<MPoly> MPoly::coefficients_in(Axis axis) const {
  const int a = static_cast<int>(axis);
  std::vector<Terms> parts(std::max(0, degree_in(axis) + 1));
  for (const auto& [m, c] : terms_) {
    Monomial n = m;
    n[a] = 0;
    parts[m[a]][n] += c;
  }
  std::vector<MPoly> out;
  out.reserve(parts.size());
  for (auto& t : parts) out.emplace_back(std::move(t));
  return out;
}

MPoly operator+(const MPoly& p, const MPoly& q) {
  MPoly::Terms t = p.terms_;
  for (const auto& [m, c] : q.terms_) t[m] += c;
  return MPoly(std::move(t));
}

MPoly operator-(const MPoly& p) { return Complex(-1.0) * p; }

MPoly operator-(const MPoly& p, const MPoly& q) {
  MPoly::Terms t = p.terms_;
  for (const auto& [m, c] : q.terms_) t[m] -= c;
  return MPoly(std::move(t));
}

MPoly operator*(const MPoly& p, const MPoly& q) {
  MPoly::Terms t;
  for (const auto& [mp, cp] : p.terms_)
    for (const auto& [mq, cq] : q.terms_) t[{mp[0] + mq[0], mp[1] + mq[1], mp[2] + mq[2]}] += cp * cq;
  return MPoly(std::move(t));
}

MPoly operator*(Complex s, const MPoly& p) {
  MPoly::Terms t = p.terms_;
  for (auto& [m, c] : t) c *= s;
  return MPoly(std::move(t));
}

std::string MPoly::to_string() const {
  if (terms_.empty()) return format_complex(0.0);
  std::string out;
  for (const auto& [m, c] : terms_) {
    if (!out.empty()) out += " + ";
    out += format_complex(c);
    for (int k = 0; k < 3; ++k) {
      out += '*';
      out += "xyz"[k];
      out += '^';
      out += std::to_string(m[k]);
    }
  }
  return out;
}

namespace {

class PolyParser {
 public:
  explicit PolyParser(std::string_view text) : text_(text) {}

  MPoly parse() {
    MPoly::Terms terms;
    skip_ws();
    double sign = 1.0;
    if (peek() == '+' || peek() == '-') {
      sign = get() == '-' ? -1.0 : 1.0;
      skip_ws();
    }
    if (at_end()) fail("empty polynomial");
    for (;;) {
      auto [mono, c] = term();
      terms[mono] += sign * c;
      skip_ws();
      if (at_end()) break;
      const char op = get();
      if (op != '+' && op != '-') fail(std::string("expected '+' or '-' but found '") + op + "'");
      sign = op == '-' ? -1.0 : 1.0;
      skip_ws();
    }
    return MPoly(std::move(terms));
  }

 private:
  std::pair<Monomial, Complex> term() {
    Monomial mono{0, 0, 0};
    Complex coeff = 1.0;
    bool any = false;
    for (;;) {
      skip_ws();
      const char ch = peek();
      if (ch == '(') {
        get();
        const std::size_t close = text_.find(')', pos_);
        if (close == std::string_view::npos) fail("unbalanced parenthesis");
        coeff *= parse_complex(text_.substr(pos_, close - pos_));
        pos_ = close + 1;
      } else if (ch == 'x' || ch == 'y' || ch == 'z') {
        get();
        int e = 1;
        skip_ws();
        if (peek() == '^') {
          get();
          skip_ws();
          e = integer();
        }
        mono[ch - 'x'] += e;
      } else if (std::isdigit(static_cast<unsigned char>(ch)) || ch == '.') {
        double v = 0.0;
        const std::size_t n = read_double(text_.substr(pos_), v);
        if (n == 0) fail("invalid number");
        pos_ += n;
        if (peek() == 'i') {
          get();
          coeff *= Complex(0.0, v);
        } else {
          coeff *= v;
        }
      } else {
        fail(at_end() ? "unexpected end of input" : std::string("unexpected character '") + ch + "'");
      }
      any = true;
      skip_ws();
      if (peek() != '*') break;
      get();
    }
    if (!any) fail("empty term");
    return {mono, coeff};
  }

  int integer() {
    const std::size_t start = pos_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) get();
    if (start == pos_) fail("expected exponent");
    return std::stoi(std::string(text_.substr(start, pos_ - start)));
  }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }
  char get() { return at_end() ? '\0' : text_[pos_++]; }
  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorKind::Parse, msg + " at offset " + std::to_string(pos_));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

MPoly MPoly::parse(std::string_view text) { return PolyParser(text).parse(); }

MPoly restrict(const MPoly& p, Pin pin) { return p.substitute(pin.axis, pin.value); }

UPoly restrict(const MPoly& p, Pin first, Pin second) {
  if (first.axis == second.axis) throw Error(ErrorKind::Unsupported, "both pins on the same axis");
  const int free_axis = 3 - static_cast<int>(first.axis) - static_cast<int>(second.axis);
  return p.substitute(first.axis, first.value)
      .substitute(second.axis, second.value)
      .as_univariate(static_cast<Axis>(free_axis));
}

double distance(const MPoly& p, const MPoly& q) {
  const MPoly d = p - q;
  double scale = 1.0;
  for (const auto& [m, c] : p.terms()) scale = std::max(scale, std::abs(c));
  for (const auto& [m, c] : q.terms()) scale = std::max(scale, std::abs(c));
  double m = 0.0;
  for (const auto& [mono, c] : d.terms()) m = std::max(m, std::abs(c));
  return m / scale;
}

}  // namespace flexkit
