#include "tropiso/isodiametric.hpp"

#include <stdexcept>
#include <string>

#include "tropiso/assignment.hpp"
#include "tropiso/errors.hpp"

namespace tropiso {

namespace {

// Reference values of the variant: diagonal, off-diagonal first row/column
// entries, corner entry, pair sum, and the closed interval for (i) and (iv).
struct VariantConstants {
  Rational corner, border, diagonal, pair_sum;
  Rational entry_lo, entry_hi, triple_lo, triple_hi;
};

VariantConstants constants(StandardVariant v) {
  if (v == StandardVariant::MaxStandard) return {1, 0, 1, 0, -1, 1, -1, 1};
  return {0, 1, 0, 2, 0, 2, 2, 4};
}

bool shape_ok(const TropMatrix& a, StandardVariant v) {
  if (!a.is_square() || !a.is_finite() || a.semiring() != semiring_of(v)) return false;
  const auto c = constants(v);
  if (a.value(0, 0) != c.corner) return false;
  for (std::size_t j = 1; j < a.rows(); ++j)
    if (a.value(0, j) != c.border || a.value(j, 0) != c.border) return false;
  return true;
}

}  // namespace

std::string_view to_string(StandardVariant v) {
  return v == StandardVariant::MaxStandard ? "max-standard" : "min-standard";
}

Semiring semiring_of(StandardVariant v) {
  return v == StandardVariant::MaxStandard ? Semiring::MaxPlus : Semiring::MinPlus;
}

std::string_view to_string(EquivalenceMove::Kind k) {
  switch (k) {
    case EquivalenceMove::Kind::RowPermutation: return "row-permutation";
    case EquivalenceMove::Kind::ColumnPermutation: return "column-permutation";
    case EquivalenceMove::Kind::RowOffsets: return "row-offsets";
    case EquivalenceMove::Kind::ColumnOffsets: return "column-offsets";
  }
  return "?";
}

std::string_view to_string(Classification c) {
  switch (c) {
    case Classification::Isodiametric: return "isodiametric";
    case Classification::NearIsodiametric: return "near-isodiametric";
    case Classification::Neither: return "neither";
  }
  return "?";
}

TropMatrix replay(const TropMatrix& original, const std::vector<EquivalenceMove>& trail) {
  TropMatrix m = original;
  for (const auto& mv : trail) {
    switch (mv.kind) {
      case EquivalenceMove::Kind::RowPermutation: m = m.permute_rows(mv.permutation); break;
      case EquivalenceMove::Kind::ColumnPermutation: m = m.permute_columns(mv.permutation); break;
      case EquivalenceMove::Kind::RowOffsets:
        m = translate(m, mv.offsets, std::vector<Rational>(m.cols(), Rational(0)));
        break;
      case EquivalenceMove::Kind::ColumnOffsets:
        m = translate(m, std::vector<Rational>(m.rows(), Rational(0)), mv.offsets);
        break;
    }
  }
  return m;
}

bool is_standard(const TropMatrix& a, StandardVariant variant) {
  if (!shape_ok(a, variant)) return false;
  return Permutation::identity(a.rows()).weight_of(a) == tdet(a).value;
}

StandardForm to_standard(const TropMatrix& input, StandardVariant variant) {
  input.require_square("to_standard");
  input.require_finite("to_standard");
  const TropMatrix a = input.with_semiring(semiring_of(variant));
  const std::size_t d = a.rows();
  const auto c = constants(variant);

  StandardForm out{variant, a, {}};
  const Permutation sigma = *lex_min_optimal(a);
  if (!sigma.is_identity()) {
    out.trail.push_back({EquivalenceMove::Kind::ColumnPermutation, sigma.images(), {}});
    out.matrix = out.matrix.permute_columns(sigma.images());
  }

  std::vector<Rational> rows(d), cols(d, Rational(0));
  rows[0] = c.corner - out.matrix.value(0, 0);
  for (std::size_t i = 1; i < d; ++i) rows[i] = c.border - out.matrix.value(i, 0);
  for (std::size_t j = 1; j < d; ++j) cols[j] = c.border - (out.matrix.value(0, j) + rows[0]);

  out.trail.push_back({EquivalenceMove::Kind::RowOffsets, {}, rows});
  out.trail.push_back({EquivalenceMove::Kind::ColumnOffsets, {}, cols});
  out.matrix = translate(out.matrix, rows, cols);
  return out;
}

IsoReport check_conditions(const TropMatrix& a, StandardVariant variant) {
  if (!is_standard(a, variant))
    throw PreconditionError("not-standard", "check_conditions: matrix is not " + std::string(to_string(variant)));
  const std::size_t d = a.rows();
  const auto c = constants(variant);
  IsoReport r{variant, {}, {}, {}, {}, true, tdiam(a), tvol(a), Classification::Neither};

  auto fail = [](ConditionVerdict& v, std::vector<std::size_t> w) {
    if (v.holds) {
      v.holds = false;
      v.witness = std::move(w);
    }
  };

  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      const Rational& x = a.value(i, j);
      if (x < c.entry_lo || x > c.entry_hi) fail(r.cond_i, {i, j});
    }
  for (std::size_t i = 0; i < d; ++i)
    if (a.value(i, i) != c.diagonal) fail(r.cond_ii, {i});
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j)
      if (a.value(i, j) + a.value(j, i) != c.pair_sum) fail(r.cond_iii, {i, j});
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k) {
        if (i == j || j == k || i == k) continue;
        Rational s = a.value(i, j) + a.value(j, k) + a.value(k, i);
        if (s < c.triple_lo || s > c.triple_hi) fail(r.cond_iv, {i, j, k});
        if (s <= c.triple_lo || s >= c.triple_hi) r.strict_iv = false;
      }

  bool near = r.cond_ii.holds && r.cond_iii.holds && r.cond_iv.holds;
  // Nonnegativity of the min-standard form; b = 1 - a for the max variant.
  for (std::size_t i = 0; i < d && near; ++i)
    for (std::size_t j = 0; j < d && near; ++j) {
      const Rational& x = a.value(i, j);
      near = variant == StandardVariant::MinStandard ? x >= 0 : x <= 1;
    }

  if (r.all_conditions() && r.tdiam == 2 && r.tvol == 2)
    r.classification = Classification::Isodiametric;
  else if (near)
    r.classification = Classification::NearIsodiametric;
  return r;
}

bool converse_check(const TropMatrix& a, StandardVariant variant) {
  IsoReport r = check_conditions(a, variant);
  if (!r.all_conditions())
    throw PreconditionError("converse_check: conditions (i)-(iv) do not all hold");
  return r.tdiam == 2 && r.tvol == 2;
}

bool is_near_isodiametric(const TropMatrix& b) {
  b.require_square("is_near_isodiametric");
  if (!b.is_finite()) return false;
  const std::size_t d = b.rows();
  for (std::size_t i = 0; i < d; ++i) {
    if (b.value(i, i) != 0) return false;
    for (std::size_t j = 0; j < d; ++j) {
      if (b.value(i, j) < 0) return false;
      if (i != j && b.value(i, j) + b.value(j, i) != 2) return false;
    }
  }
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k) {
        if (i == j || j == k || i == k) continue;
        Rational s = b.value(i, j) + b.value(j, k) + b.value(k, i);
        if (s < 2 || s > 4) return false;
      }
  return true;
}

std::size_t iso_free_parameters(std::size_t d) {
  if (d < 2) throw DimensionError("Iso(d) needs d >= 2");
  return (d * d - 3 * d) / 2 + 1;
}

TropMatrix sample_isodiametric(std::size_t d, std::mt19937_64& rng, const SamplerOptions& options) {
  if (d < 3) throw DimensionError("sample_isodiametric needs d >= 3");
  if (options.resolution == 0) throw PreconditionError("sampler resolution must be positive");
  std::uniform_int_distribution<std::uint32_t> draw(0, 2 * options.resolution);

  for (std::size_t attempt = 0; attempt < options.max_attempts; ++attempt) {
    std::vector<std::vector<Rational>> b(d, std::vector<Rational>(d, Rational(0)));
    for (std::size_t j = 1; j < d; ++j) b[0][j] = b[j][0] = 1;
    for (std::size_t i = 1; i < d; ++i)
      for (std::size_t j = i + 1; j < d; ++j) {
        b[i][j] = Rational(draw(rng), options.resolution);
        b[j][i] = 2 - b[i][j];
      }

    bool ok = true;
    for (std::size_t i = 0; i < d && ok; ++i)
      for (std::size_t j = 0; j < d && ok; ++j)
        for (std::size_t k = 0; k < d && ok; ++k) {
          if (i == j || j == k || i == k) continue;
          Rational s = b[i][j] + b[j][k] + b[k][i];
          ok = options.require_strict ? (s > 2 && s < 4) : (s >= 2 && s <= 4);
        }
    if (!ok) continue;

    TropMatrix m = TropMatrix::from_rationals(Semiring::MinPlus, b);
    if (check_conditions(m, StandardVariant::MinStandard).classification != Classification::Isodiametric)
      throw std::logic_error("sampled matrix satisfies (i)-(iv) but is not isodiametric");
    return m;
  }
  throw PreconditionError("sampler-exhausted", "sample_isodiametric: no acceptable matrix after " +
                                                   std::to_string(options.max_attempts) + " attempts");
}

TropMatrix sample_isodiametric(std::size_t d, std::uint64_t seed, const SamplerOptions& options) {
  std::mt19937_64 rng(seed);
  return sample_isodiametric(d, rng, options);
}

TropMatrix negate_complement(const TropMatrix& a) {
  if (!is_standard(a, StandardVariant::MaxStandard) && !is_standard(a, StandardVariant::MinStandard))
    throw PreconditionError("not-standard", "negate_complement: input is neither max- nor min-standard");
  TropMatrix out(opposite(a.semiring()), a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out.at(i, j) = TropScalar(Rational(1 - a.value(i, j)));
  return out;
}

TropMatrix b_lambda(const Rational& lambda) {
  return TropMatrix::from_rationals(Semiring::MinPlus, {{0, 1, 1}, {1, 0, lambda}, {1, Rational(2 - lambda), 0}});
}

}  // namespace tropiso
