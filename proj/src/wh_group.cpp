#include "sipovm/wh_group.hpp"

#include <cmath>
#include <stdexcept>

namespace sipovm {

GroupContext::GroupContext(int dim) : d(dim) {
  if (dim < 2) throw std::invalid_argument("GroupContext: dimension must be >= 2");
  tau_table_.resize(2 * d);
  for (int n = 0; n < 2 * d; ++n) {
    // tau^n = (-1)^n exp(i pi n / d)
    const double angle = M_PI * n / d;
    const double s = (n % 2 == 0) ? 1.0 : -1.0;
    tau_table_[n] = Complex(s * std::cos(angle), s * std::sin(angle));
  }
  tau = tau_table_[1];
}

Complex GroupContext::tau_pow(long long n) const {
  long long m = n % (2 * d);
  if (m < 0) m += 2 * d;
  return tau_table_[static_cast<std::size_t>(m)];
}

GroupIndex reduce_index(long long p1, long long p2, const GroupContext& ctx) {
  const long long d = ctx.d;
  long long r1 = p1 % d;
  long long r2 = p2 % d;
  if (r1 < 0) r1 += d;
  if (r2 < 0) r2 += d;
  return {static_cast<int>(r1), static_cast<int>(r2)};
}

GroupIndex index_add(const GroupIndex& p, const GroupIndex& q, const GroupContext& ctx) {
  return reduce_index(static_cast<long long>(p.p1) + q.p1,
                      static_cast<long long>(p.p2) + q.p2, ctx);
}

GroupIndex index_sub(const GroupIndex& p, const GroupIndex& q, const GroupContext& ctx) {
  return reduce_index(static_cast<long long>(p.p1) - q.p1,
                      static_cast<long long>(p.p2) - q.p2, ctx);
}

GroupIndex index_neg(const GroupIndex& p, const GroupContext& ctx) {
  return reduce_index(-static_cast<long long>(p.p1), -static_cast<long long>(p.p2), ctx);
}

long long symplectic(long long p1, long long p2, long long q1, long long q2) {
  return p2 * q1 - p1 * q2;
}

long long symplectic(const GroupIndex& p, const GroupIndex& q) {
  return symplectic(p.p1, p.p2, q.p1, q.p2);
}

int sign_factor(long long p1, long long p2, const GroupContext& ctx) {
  if (ctx.odd()) return 1;
  const GroupIndex r = reduce_index(p1, p2, ctx);
  // <p,[p]> is always a multiple of d, so the division is exact.
  const long long sp = symplectic(p1, p2, r.p1, r.p2) / ctx.d;
  return (sp % 2 == 0) ? 1 : -1;
}

int sign_factor(const GroupIndex& p, const GroupContext& ctx) {
  return sign_factor(p.p1, p.p2, ctx);
}

Matrix displacement(const GroupIndex& p, const GroupContext& ctx) {
  const int d = ctx.d;
  Matrix m = Matrix::Zero(d, d);
  for (int c = 0; c < d; ++c) {
    // D_p |c> = tau^{p1 p2 + 2 p2 c} |c + p1 mod d>
    const long long phase = static_cast<long long>(p.p1) * p.p2 +
                            2LL * p.p2 * c;
    m((c + p.p1) % d, c) = ctx.tau_pow(phase);
  }
  return m;
}

CoefficientTable expand(const Matrix& a, const GroupContext& ctx) {
  const int d = ctx.d;
  if (a.rows() != d || a.cols() != d)
    throw std::invalid_argument("expand: matrix dimension does not match context");
  CoefficientTable table{ctx, Vector(d * d)};
  for (int p1 = 0; p1 < d; ++p1) {
    for (int p2 = 0; p2 < d; ++p2) {
      const Matrix dp = displacement({p1, p2}, ctx);
      table.values(p1 * d + p2) = (dp.adjoint() * a).trace() / static_cast<double>(d);
    }
  }
  return table;
}

Matrix reconstruct(const CoefficientTable& table) {
  const int d = table.ctx.d;
  Matrix a = Matrix::Zero(d, d);
  for (int p1 = 0; p1 < d; ++p1)
    for (int p2 = 0; p2 < d; ++p2)
      a += table.values(p1 * d + p2) * displacement({p1, p2}, table.ctx);
  return a;
}

double hermiticity_residual(const CoefficientTable& table) {
  const GroupContext& ctx = table.ctx;
  double worst = 0.0;
  for (int p1 = 0; p1 < ctx.d; ++p1) {
    for (int p2 = 0; p2 < ctx.d; ++p2) {
      const GroupIndex p{p1, p2};
      const GroupIndex pbar = index_neg(p, ctx);
      const double s = sign_factor(-p.p1, -p.p2, ctx);
      const Complex expected = s * std::conj(table.at(p));
      worst = std::max(worst, std::abs(table.at(pbar) - expected));
    }
  }
  return worst;
}

namespace {

void require_same_context(std::span<const CoefficientTable> tables) {
  if (tables.size() != 2 && tables.size() != 3)
    throw std::invalid_argument("coefficient products are defined for 2 or 3 factors");
  for (const auto& t : tables)
    if (t.ctx.d != tables[0].ctx.d)
      throw std::invalid_argument("coefficient tables have mismatched dimensions");
}

CoefficientTable convolve_pair(const CoefficientTable& a, const CoefficientTable& b) {
  const GroupContext& ctx = a.ctx;
  const int d = ctx.d;
  CoefficientTable out{ctx, Vector::Zero(d * d)};
  for (int p1 = 0; p1 < d; ++p1) {
    for (int p2 = 0; p2 < d; ++p2) {
      const GroupIndex p{p1, p2};
      Complex sum = 0.0;
      for (int q1 = 0; q1 < d; ++q1) {
        for (int q2 = 0; q2 < d; ++q2) {
          const GroupIndex q{q1, q2};
          // (AB)_p = sum_q s_{p-q} tau^{<q,p>} A_q B_{p (-) q};
          // the sign is taken at the unreduced difference.
          const double s = sign_factor(p1 - q1, p2 - q2, ctx);
          sum += s * ctx.tau_pow(symplectic(q, p)) * a.at(q) * b.at(index_sub(p, q, ctx));
        }
      }
      out.values(p1 * d + p2) = sum;
    }
  }
  return out;
}

}  // namespace

CoefficientTable convolve_coefficients(std::span<const CoefficientTable> tables) {
  require_same_context(tables);
  if (tables.size() == 2) return convolve_pair(tables[0], tables[1]);

  const GroupContext& ctx = tables[0].ctx;
  const int d = ctx.d;
  const auto& a = tables[0];
  const auto& b = tables[1];
  const auto& c = tables[2];
  CoefficientTable out{ctx, Vector::Zero(d * d)};
  for (int p1 = 0; p1 < d; ++p1) {
    for (int p2 = 0; p2 < d; ++p2) {
      const GroupIndex p{p1, p2};
      Complex sum = 0.0;
      for (int q1 = 0; q1 < d; ++q1) {
        for (int q2 = 0; q2 < d; ++q2) {
          const GroupIndex q{q1, q2};
          const GroupIndex pmq = index_sub(p, q, ctx);
          for (int r1 = 0; r1 < d; ++r1) {
            for (int r2 = 0; r2 < d; ++r2) {
              const GroupIndex r{r1, r2};
              const double s = sign_factor(static_cast<long long>(p1) - q1 - r1,
                                           static_cast<long long>(p2) - q2 - r2, ctx);
              const long long phase =
                  symplectic(static_cast<long long>(q1) + r1,
                             static_cast<long long>(q2) + r2, p1, p2) +
                  symplectic(q, r);
              sum += s * ctx.tau_pow(phase) * a.at(q) * b.at(r) *
                     c.at(index_sub(pmq, r, ctx));
            }
          }
        }
      }
      out.values(p1 * d + p2) = sum;
    }
  }
  return out;
}

Complex trace_product(std::span<const CoefficientTable> tables) {
  require_same_context(tables);
  const GroupContext& ctx = tables[0].ctx;
  const int d = ctx.d;

  bool hermitian = true;
  for (const auto& t : tables)
    if (hermiticity_residual(t) > 1e-9) hermitian = false;

  if (tables.size() == 2) {
    const auto& a = tables[0];
    const auto& b = tables[1];
    Complex sum = 0.0;
    for (int q1 = 0; q1 < d; ++q1) {
      for (int q2 = 0; q2 < d; ++q2) {
        const GroupIndex q{q1, q2};
        if (hermitian) {
          sum += a.at(q) * std::conj(b.at(q));
        } else {
          const double s = sign_factor(-q1, -q2, ctx);
          sum += s * a.at(q) * b.at(index_neg(q, ctx));
        }
      }
    }
    return static_cast<double>(d) * sum;
  }

  const auto& a = tables[0];
  const auto& b = tables[1];
  const auto& c = tables[2];
  Complex sum = 0.0;
  for (int q1 = 0; q1 < d; ++q1) {
    for (int q2 = 0; q2 < d; ++q2) {
      const GroupIndex q{q1, q2};
      for (int r1 = 0; r1 < d; ++r1) {
        for (int r2 = 0; r2 < d; ++r2) {
          const GroupIndex r{r1, r2};
          const Complex tau_qr = ctx.tau_pow(symplectic(q, r));
          if (hermitian) {
            const double s = sign_factor(static_cast<long long>(q1) + r1,
                                         static_cast<long long>(q2) + r2, ctx);
            sum += s * tau_qr * a.at(q) * b.at(r) *
                   std::conj(c.at(index_add(q, r, ctx)));
          } else {
            const double s = sign_factor(-static_cast<long long>(q1) - r1,
                                         -static_cast<long long>(q2) - r2, ctx);
            sum += s * tau_qr * a.at(q) * b.at(r) *
                   c.at(index_add(index_neg(q, ctx), index_neg(r, ctx), ctx));
          }
        }
      }
    }
  }
  return static_cast<double>(d) * sum;
}

}  // namespace sipovm
