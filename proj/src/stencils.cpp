#include "isodmm/stencils.hpp"

#include <stdexcept>
#include <utility>

#include "isodmm/splines.hpp"

namespace isodmm {

namespace {

void require_degree(int p) {
  if (p < 1) throw std::invalid_argument("stencil degree must be at least 1");
}

BigInt ipow(long base, int e) {
  BigInt r;
  BigInt b = base;
  if (base < 0) {
    mpz_pow_ui(r.get_mpz_t(), BigInt(-base).get_mpz_t(), static_cast<unsigned long>(e));
    if (e % 2 != 0) r = -r;
    return r;
  }
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), static_cast<unsigned long>(e));
  return r;
}

// Mass stencils of degree 0..p, built with the degree recursion.
std::vector<Stencil> mass_family(int p) {
  std::vector<Stencil> family;
  family.push_back(Stencil{0, StencilKind::mass, {Rational(1)}});
  for (int q = 1; q <= p; ++q) {
    const Stencil& prev = family.back();
    Stencil next{q, StencilKind::mass, std::vector<Rational>(q + 1)};
    const Rational denom = Rational(2 * q * (2 * q + 1));
    for (int k = 0; k <= q; ++k) {
      const long a = q + k + 1;
      const long b = static_cast<long>(k) * k - q - static_cast<long>(q) * q;
      const long c = q - k + 1;
      Rational v = Rational(a * a) * prev.at(k + 1) - Rational(2 * b) * prev.at(k) +
                   Rational(c * c) * prev.at(k - 1);
      v /= denom;
      v.canonicalize();
      next.values[k] = v;
    }
    family.push_back(std::move(next));
  }
  return family;
}

}  // namespace

RealStencil to_real(const Stencil& s) {
  RealStencil r{s.degree, s.kind, {}};
  r.values.reserve(s.values.size());
  for (const auto& v : s.values) r.values.push_back(to_double(v));
  return r;
}

Stencil mass_stencil(int p) {
  require_degree(p);
  return mass_family(p).back();
}

Stencil stiffness_stencil(int p) {
  require_degree(p);
  const Stencil lower = mass_family(p - 1).back();
  Stencil a{p, StencilKind::stiffness, std::vector<Rational>(p + 1)};
  for (int k = 0; k <= p; ++k) {
    a.values[k] = Rational(2) * lower.at(k) - lower.at(k + 1) - lower.at(k - 1);
  }
  return a;
}

Rational half_moment(const Stencil& s, int e) {
  Rational sum = 0;
  for (int k = 1; k < static_cast<int>(s.values.size()); ++k) {
    sum += power_over_factorial(k, e) * s.values[k];
  }
  return sum;
}

double half_moment(const RealStencil& s, int e) {
  double sum = 0.0;
  for (int k = 1; k < static_cast<int>(s.values.size()); ++k) {
    sum += to_double(power_over_factorial(k, e)) * s.values[k];
  }
  return sum;
}

bool IdentityReport::all_passed() const { return failures() == 0; }

std::size_t IdentityReport::failures() const {
  std::size_t n = 0;
  for (const auto& c : checks) n += c.passed() ? 0 : 1;
  return n;
}

void IdentityReport::append(const IdentityReport& other) {
  checks.insert(checks.end(), other.checks.begin(), other.checks.end());
}

void IdentityReport::add(std::string identity, int p, int m, Rational residual) {
  residual.canonicalize();
  checks.push_back(IdentityCheck{std::move(identity), p, m, std::move(residual)});
}

IdentityReport verify_base_identities(int p) {
  require_degree(p);
  const Stencil a = stiffness_stencil(p);
  const Stencil b = mass_stencil(p);
  IdentityReport report;
  report.add("stiffness row sum", p, 0, a.row_sum());
  report.add("mass row sum", p, 0, b.row_sum() - 1);

  Rational a2 = 0, b2 = 0;
  for (int k = 1; k <= p; ++k) {
    a2 += Rational(k * k) * a.values[k];
    b2 += Rational(k * k) * b.values[k];
  }
  report.add("stiffness second moment", p, 0, a2 + 1);
  report.add("mass second moment", p, 0, Rational(p + 1) - 12 * b2);

  Rational mismatch = 0;
  for (int k = 0; k <= p; ++k) {
    const Rational diff = b.values[k] - cardinal_value(2 * p + 1, Rational(k + p + 1));
    mismatch += abs(diff);
  }
  report.add("mass vs cardinal spline", p, 0, mismatch);
  return report;
}

IdentityReport verify_ab_identity(int p) {
  if (p < 2) throw std::invalid_argument("moment identities need degree at least 2");
  const Stencil a = stiffness_stencil(p);
  const Stencil b = mass_stencil(p);
  IdentityReport report;
  for (int m = 2; m <= p; ++m) {
    report.add("AB moment", p, m, half_moment(a, 2 * m) + half_moment(b, 2 * m - 2));
  }

  // C_2 = 1, C_{2m} = sum (-1)^m k^{2m}/(2m)! A - sum_q C_{2m-2q} (-1)^q k^{2q}/(2q)! B
  std::vector<Rational> c(p + 1);
  c[1] = 1;
  for (int m = 2; m <= p; ++m) {
    Rational value = (m % 2 == 0 ? 1 : -1) * half_moment(a, 2 * m);
    for (int q = 1; q <= m - 1; ++q) {
      value -= c[m - q] * (q % 2 == 0 ? 1 : -1) * half_moment(b, 2 * q);
    }
    value.canonicalize();
    c[m] = value;
    report.add("C coefficient", p, m, value);
  }
  return report;
}

std::vector<SignFlag> sign_pattern_flags(int p) {
  const Stencil a = stiffness_stencil(p);
  const Stencil b = mass_stencil(p);
  std::vector<SignFlag> flags;
  for (int k = 0; k <= p; ++k) {
    if (b.values[k] <= 0) flags.push_back({StencilKind::mass, p, k, b.values[k]});
  }
  if (a.values[0] <= 0) flags.push_back({StencilKind::stiffness, p, 0, a.values[0]});
  for (int k = 1; k <= p; ++k) {
    if (a.values[k] >= 0) flags.push_back({StencilKind::stiffness, p, k, a.values[k]});
  }
  return flags;
}

FGLedger fg_ledger(int p, int m) {
  if (p < 2) throw std::invalid_argument("F/G ledger needs p >= 2");
  if (m < 2) throw std::invalid_argument("F/G ledger needs m >= 2");
  FGLedger ledger{p, m, {}, {}};
  const long two_m = 2L * m;

  BigInt f0 = BigInt(-2L * p * (2L * p + 1)) + BigInt(two_m * (two_m - 1)) * BigInt(p) * BigInt(p);
  std::vector<BigInt> g0(p);
  for (int k = 0; k <= p - 1; ++k) {
    const BigInt first = BigInt(2L * p * (2L * p + 1)) *
                         (2 * ipow(k, 2 * m) - ipow(k + 1, 2 * m) - ipow(k - 1, 2 * m));
    const BigInt pk = p + k;
    const BigInt mk = p - k;
    const BigInt second =
        BigInt(two_m * (two_m - 1)) *
        (ipow(k - 1, 2 * m - 2) * pk * pk -
         2 * ipow(k, 2 * m - 2) * BigInt(static_cast<long>(k) * k - p - static_cast<long>(p) * p) +
         ipow(k + 1, 2 * m - 2) * mk * mk);
    g0[k] = first + second;
  }
  ledger.F.push_back(f0);
  ledger.G.push_back(g0);

  for (int q = 1; q <= p - 2; ++q) {
    const std::vector<BigInt>& gp = ledger.G.back();
    const long r = p - q;
    // G^{q-1} is even in k, so the k = -1 neighbour equals k = 1.
    auto prev = [&](int k) -> BigInt {
      const int a = std::abs(k);
      if (a >= static_cast<int>(gp.size())) return BigInt(0);
      return gp[a];
    };
    const BigInt fq = BigInt(2 * (r + 1) * r) * ledger.F.back() + BigInt(r * r) * prev(1);
    std::vector<BigInt> gq(p - q);
    for (int k = 0; k <= p - 1 - q; ++k) {
      const long lo = r + k;
      const long hi = r - k;
      gq[k] = BigInt(lo * lo) * prev(k - 1) -
              2 * BigInt(static_cast<long>(k) * k - (r + 1) * r) * prev(k) +
              BigInt(hi * hi) * prev(k + 1);
    }
    ledger.F.push_back(fq);
    ledger.G.push_back(std::move(gq));
  }
  return ledger;
}

IdentityReport fg_verify(int p_max, int m_max) {
  if (p_max < 2) throw std::invalid_argument("F/G verification needs p_max >= 2");
  IdentityReport report;
  for (int p = 2; p <= p_max; ++p) {
    for (int m = 2; m <= std::min(p, m_max); ++m) {
      const FGLedger own = fg_ledger(p, m);
      const BigInt closing = 4 * own.F[p - 2] + own.G[p - 2][1];
      report.add("F/G closing", p, m, Rational(closing));
      if (p >= 3) {
        const FGLedger next = fg_ledger(p + 1, m);
        for (int q = 1; q <= p - 2; ++q) {
          report.add("F/G q=" + std::to_string(q), p, m, Rational(2 * next.F[q] - next.G[q][0]));
        }
      }
    }
  }
  return report;
}

}  // namespace isodmm
