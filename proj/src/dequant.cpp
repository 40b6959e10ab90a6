#include "tropiso/dequant.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "tropiso/transport.hpp"

namespace tropiso {

namespace {

void require_max_plus(const TropMatrix& a, const char* op) {
  if (a.semiring() != Semiring::MaxPlus)
    throw SemiringMismatchError(std::string(op) + " expects a max-plus matrix");
}

std::string index_list(const std::vector<std::size_t>& v) {
  std::ostringstream os;
  os << '{';
  for (std::size_t k = 0; k < v.size(); ++k) os << (k ? "," : "") << v[k];
  os << '}';
  return os.str();
}

// Bottom when a has fewer columns than rows.
TropScalar qvol_plus_value(const TropMatrix& a) {
  if (a.cols() < a.rows()) return TropScalar::bottom();
  QvolOptions opts;
  opts.check_sign_genericity = false;
  return qvol_plus(a, QvolMethod::BruteForce, opts).value;
}

QvolResult qvol_brute(const TropMatrix& a) {
  QvolResult out{TropScalar::bottom(), {}, std::nullopt, QvolMethod::BruteForce, std::nullopt};
  for_each_subset(a.cols(), a.rows(), [&](const std::vector<std::size_t>& cols) {
    TropScalar v = tper(a.select_columns(cols));
    if (trop_better(Semiring::MaxPlus, v, out.value)) {
      out.value = std::move(v);
      out.witness_columns = cols;
    }
  });
  if (out.value.is_finite()) out.witness_perm = lex_min_optimal(a.select_columns(out.witness_columns));
  return out;
}

QvolResult qvol_transport(const TropMatrix& a) {
  QvolResult out{TropScalar::bottom(), {}, std::nullopt, QvolMethod::TransportLP, std::nullopt};
  std::vector<std::vector<std::optional<Rational>>> w(a.rows(), std::vector<std::optional<Rational>>(a.cols()));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (a(i, j).is_finite()) w[i][j] = a.value(i, j);
  auto sol = max_weight_transport(w);
  if (!sol) return out;
  out.value = sol->value;
  std::vector<std::size_t> row_col(a.rows());
  for (auto [i, j] : sol->arcs) {
    row_col[i] = j;
    out.witness_columns.push_back(j);
  }
  std::sort(out.witness_columns.begin(), out.witness_columns.end());
  std::vector<std::size_t> images(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    images[i] = static_cast<std::size_t>(
        std::lower_bound(out.witness_columns.begin(), out.witness_columns.end(), row_col[i]) -
        out.witness_columns.begin());
  out.witness_perm = Permutation(std::move(images));
  return out;
}

std::vector<Rational> column_point(const OrdinaryMatrix& a, std::size_t j) {
  std::vector<Rational> p;
  for (const auto& row : a) p.push_back(row[j]);
  return p;
}

std::vector<std::vector<Rational>> columns_as_points(const OrdinaryMatrix& a) {
  std::vector<std::vector<Rational>> pts;
  const std::size_t m = a.empty() ? 0 : a.front().size();
  for (std::size_t j = 0; j < m; ++j) pts.push_back(column_point(a, j));
  return pts;
}

}  // namespace

TropScalar tper(const TropMatrix& c) {
  require_max_plus(c, "tper");
  c.require_square("tper");
  if (c.rows() == 0) return TropScalar(0);
  return tdet(c).value;
}

std::string_view to_string(QvolMethod m) {
  return m == QvolMethod::BruteForce ? "brute-force" : "transport-lp";
}

QvolMethod parse_qvol_method(std::string_view name) {
  if (name == "brute" || name == "brute-force") return QvolMethod::BruteForce;
  if (name == "lp" || name == "transport-lp") return QvolMethod::TransportLP;
  throw ParseError("unknown qvol method '" + std::string(name) + "'");
}

QvolResult qvol_plus(const TropMatrix& a, QvolMethod method, const QvolOptions& options) {
  require_max_plus(a, "qvol_plus");
  if (a.cols() < a.rows())
    throw DimensionError("qvol_plus needs at least as many columns as rows, got " + std::to_string(a.rows()) +
                         "x" + std::to_string(a.cols()));
  QvolResult out = method == QvolMethod::BruteForce ? qvol_brute(a) : qvol_transport(a);
  if (options.check_sign_genericity) out.sign_generic_bar = sign_generic(a, true, options.cap).verdict;
  return out;
}

TropMatrix bar(const TropMatrix& a) {
  TropMatrix out(a.semiring(), a.rows() + 1, a.cols());
  for (std::size_t j = 0; j < a.cols(); ++j) out.at(0, j) = TropScalar(0);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out.at(i + 1, j) = a(i, j);
  return out;
}

SignGenericReport sign_generic(const TropMatrix& a, bool use_bar, std::size_t cap) {
  const TropMatrix m = use_bar ? bar(a) : a;
  SignGenericReport report{ParityVerdict::SameParity, 0, {}, {}};
  const bool wide = m.rows() <= m.cols();
  const std::size_t k = std::min(m.rows(), m.cols());
  std::vector<std::size_t> all_rows(m.rows()), all_cols(m.cols());
  std::iota(all_rows.begin(), all_rows.end(), 0);
  std::iota(all_cols.begin(), all_cols.end(), 0);

  bool mixed = false;
  for_each_subset(wide ? m.cols() : m.rows(), k, [&](const std::vector<std::size_t>& pick) {
    if (mixed) return;
    const auto& rows = wide ? all_rows : pick;
    const auto& cols = wide ? pick : all_cols;
    ParityReport pr = parity_report(m.select_rows(rows).select_columns(cols), cap);
    ++report.submatrices_checked;
    if (pr.verdict == ParityVerdict::SameParity) return;
    if (pr.verdict == ParityVerdict::MixedParity) mixed = true;
    if (mixed || report.verdict == ParityVerdict::SameParity) {
      report.verdict = pr.verdict;
      report.witness_rows = rows;
      report.witness_columns = cols;
    }
  });
  return report;
}

NotSignGenericError::NotSignGenericError(SignGenericReport report)
    : Error("not-sign-generic", "optimal permutations of mixed parity in the submatrix with rows " +
                                    index_list(report.witness_rows) + " and columns " +
                                    index_list(report.witness_columns) + " of the barred matrix"),
      report_(std::move(report)) {}

TropScalar qvol(const TropMatrix& a, std::size_t cap) {
  require_max_plus(a, "qvol");
  if (a.cols() < a.rows()) throw DimensionError("qvol needs at least as many columns as rows");
  SignGenericReport sg = sign_generic(a, true, cap);
  if (sg.verdict == ParityVerdict::MixedParity) throw NotSignGenericError(std::move(sg));
  if (sg.verdict == ParityVerdict::Unknown)
    throw PreconditionError("parity-unknown", "enumeration cap " + std::to_string(cap) +
                                                  " reached on the submatrix with columns " +
                                                  index_list(sg.witness_columns));
  return qvol_plus_value(a);
}

LiftSpec default_lift(const TropMatrix& a) {
  require_max_plus(a, "default_lift");
  const std::size_t d = a.rows();
  Rational boost = 1;
  for (std::size_t k = 2; k <= d + 1; ++k) boost *= k;
  LiftSpec spec{a, std::vector<std::vector<Rational>>(d, std::vector<Rational>(a.cols(), Rational(1))), boost, {}};
  QvolOptions opts;
  opts.check_sign_genericity = false;
  QvolResult q = qvol_plus(a, QvolMethod::BruteForce, opts);
  if (q.witness_perm)
    for (std::size_t i = 0; i < d; ++i) spec.boosted_cells.emplace_back(i, q.witness_columns[(*q.witness_perm)[i]]);
  return spec;
}

std::vector<std::vector<double>> lift_eval(const LiftSpec& spec, double t) {
  if (!(t > 1)) throw PreconditionError("lift_eval needs t > 1");
  const TropMatrix& base = spec.base;
  std::vector<std::vector<double>> out(base.rows(), std::vector<double>(base.cols(), 0.0));
  for (std::size_t i = 0; i < base.rows(); ++i)
    for (std::size_t j = 0; j < base.cols(); ++j)
      if (base(i, j).is_finite())
        out[i][j] = to_double(spec.coefficients[i][j]) * std::pow(t, to_double(base.value(i, j)));
  for (auto [i, j] : spec.boosted_cells) out[i][j] *= to_double(spec.boost);
  return out;
}

std::vector<double> default_t_grid() { return {1e2, 1e3, 1e4, 1e5, 1e6}; }

SlopeResult dequant_slope(const TropMatrix& a, const std::vector<double>& t_grid, std::size_t cap) {
  require_max_plus(a, "dequant_slope");
  if (a.rows() == 0 || a.rows() > 3) throw DimensionError("dequant_slope supports 1 <= d <= 3");
  if (a.cols() < a.rows()) throw DimensionError("dequant_slope needs at least as many columns as rows");
  if (t_grid.empty()) throw PreconditionError("empty t grid");
  std::vector<double> grid = t_grid;
  std::sort(grid.begin(), grid.end());

  const LiftSpec spec = default_lift(a);
  SlopeResult out{};
  for (double t : grid) {
    auto lifted = lift_eval(spec, t);
    OrdinaryMatrix exact(lifted.size());
    for (std::size_t i = 0; i < lifted.size(); ++i)
      for (double x : lifted[i]) exact[i].push_back(rational_from_double(x));
    double vol = to_double(hull_volume(columns_as_points(exact)).volume);
    if (vol > 0) out.samples.push_back({t, vol, std::log(vol) / std::log(t)});
  }
  if (out.samples.empty()) throw DegenerateHullError("the lifted hull has zero volume at every t");

  SignGenericReport sg = sign_generic(a, true, cap);
  if (sg.verdict == ParityVerdict::MixedParity) throw NotSignGenericError(std::move(sg));
  if (sg.verdict == ParityVerdict::Unknown) throw PreconditionError("parity-unknown", "enumeration cap reached");

  out.ratio_at_largest_t = out.samples.back().log_ratio;
  if (out.samples.size() == 1) {
    out.slope = out.ratio_at_largest_t;
    return out;
  }
  double n = static_cast<double>(out.samples.size()), sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& s : out.samples) {
    double x = std::log(s.t), y = std::log(s.volume);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  out.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return out;
}

TropMatrix log_matrix(const OrdinaryMatrix& a) {
  const std::size_t d = a.size(), m = a.empty() ? 0 : a.front().size();
  TropMatrix out(Semiring::MaxPlus, d, m);
  for (std::size_t i = 0; i < d; ++i) {
    if (a[i].size() != m) throw DimensionError("ragged matrix");
    for (std::size_t j = 0; j < m; ++j) {
      if (a[i][j] < 0) throw PreconditionError("negative-entry", "entry (" + std::to_string(i) + "," +
                                                                      std::to_string(j) + ") is negative");
      if (a[i][j] > 0) out.at(i, j) = rational_from_double(std::log(to_double(a[i][j])));
    }
  }
  return out;
}

BoundReport volume_bound_check(const OrdinaryMatrix& a) {
  const std::size_t d = a.size();
  if (d == 0 || d > 3) throw DimensionError("volume_bound_check supports 1 <= d <= 3");
  TropMatrix logs = log_matrix(a);
  HullVolume hv = hull_volume(columns_as_points(a));
  BoundReport r{hv.volume, hv.alpha, qvol_plus_value(logs), 0.0, false};
  if (r.qvol_log.is_finite())
    r.bound = static_cast<double>(r.alpha) * static_cast<double>(d + 1) * std::exp(to_double(r.qvol_log.value()));
  r.holds = to_double(r.volume) <= r.bound + kBoundSlack * std::max(1.0, r.bound);
  return r;
}

CauchyBinetSides cauchy_binet_sides(const TropMatrix& b, const TropMatrix& c, const std::vector<std::size_t>& cols) {
  require_max_plus(b, "cauchy_binet_check");
  require_max_plus(c, "cauchy_binet_check");
  if (b.cols() != c.rows()) throw DimensionError("inner dimensions differ");
  const std::size_t d = b.rows();
  if (cols.size() != d) throw DimensionError("column subset must have one index per row");
  std::vector<std::size_t> sorted = cols;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end() || (!sorted.empty() && sorted.back() >= c.cols()))
    throw DimensionError("invalid column subset");

  CauchyBinetSides s{tper(trop_mat_mul(b, c).select_columns(cols)), TropScalar::bottom()};
  const TropMatrix ci = c.select_columns(cols);
  for_each_subset(b.cols(), d, [&](const std::vector<std::size_t>& k) {
    TropScalar term = trop_mul(tper(b.select_columns(k)), tper(ci.select_rows(k)));
    s.rhs = trop_add(Semiring::MaxPlus, s.rhs, term);
  });
  return s;
}

bool cauchy_binet_check(const TropMatrix& b, const TropMatrix& c, const std::vector<std::size_t>& cols) {
  CauchyBinetSides s = cauchy_binet_sides(b, c, cols);
  return s.lhs == s.rhs;
}

std::string_view to_string(MeasureCheck m) {
  switch (m) {
    case MeasureCheck::Equal: return "equal";
    case MeasureCheck::NotEqual: return "not-equal";
    case MeasureCheck::Skip: return "skip";
  }
  return "?";
}

TropMatrix concat_columns(const TropMatrix& a, const TropMatrix& b) {
  if (a.rows() != b.rows()) throw DimensionError("concat_columns: row counts differ");
  if (a.semiring() != b.semiring()) throw SemiringMismatchError("concat_columns: semirings differ");
  TropMatrix out(a.semiring(), a.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) out.at(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) out.at(i, a.cols() + j) = b(i, j);
  }
  return out;
}

MeasureCheck idempotent_measure_check(const TropMatrix& a, const TropMatrix& b, std::size_t cap) {
  TropMatrix c = concat_columns(a, b);
  require_max_plus(c, "idempotent_measure_check");
  if (c.cols() < c.rows()) return MeasureCheck::Skip;
  if (sign_generic(c, true, cap).verdict != ParityVerdict::SameParity) return MeasureCheck::Skip;
  TropScalar rhs = trop_add(Semiring::MaxPlus, qvol_plus_value(a), qvol_plus_value(b));
  return qvol_plus_value(c) == rhs ? MeasureCheck::Equal : MeasureCheck::NotEqual;
}

}  // namespace tropiso
