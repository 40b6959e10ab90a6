#include "tropiso/cli.hpp"

#include <charconv>
#include <cstdlib>
#include <map>
#include <mutex>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "tropiso/assignment.hpp"
#include "tropiso/dequant.hpp"
#include "tropiso/io.hpp"
#include "tropiso/isodiametric.hpp"
#include "tropiso/polytrope.hpp"

namespace tropiso::cli {

namespace {

using nlohmann::json;

struct Options {
  std::string input;
  std::string semiring;
  std::string format;
  std::optional<std::size_t> cap;
  unsigned jobs = 1;
  std::uint64_t seed = 0;
  std::string svg;
  std::string report;
  std::string t_grid;
  std::string variant = "max";
  std::string method = "brute";
  std::vector<std::size_t> rows{0, 1};
  std::size_t dim = 3;
  std::size_t count = 1;
  bool strict = false;
  bool no_bar = false;
  bool standardize_first = false;
  bool require_generic = false;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::optional<Semiring> semiring_flag(const Options& o) {
  if (o.semiring.empty()) return std::nullopt;
  return parse_semiring(o.semiring);
}

std::size_t resolve_cap(const Options& o) {
  if (o.cap) return *o.cap;
  if (const char* env = std::getenv("TROPISO_CAP")) {
    std::size_t value = 0;
    std::string_view s(env);
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || ptr != s.data() + s.size() || value == 0)
      throw UsageError("TROPISO_CAP must be a positive integer, got '" + std::string(s) + "'");
    return value;
  }
  return kDefaultEnumerationCap;
}

StandardVariant variant_flag(const Options& o) {
  return o.variant == "min" ? StandardVariant::MinStandard : StandardVariant::MaxStandard;
}

TropMatrix load_one(const Options& o, std::optional<Semiring> fallback = {}) {
  return io::load_matrix_set(o.input, semiring_flag(o), fallback).front().matrix;
}

json indices_json(const std::vector<std::size_t>& v) { return json(v); }

void print_json(std::ostream& out, const json& j) { out << j.dump(2) << '\n'; }

void print_scalar(std::ostream& out, const Options& o, const std::string& key, const std::string& value) {
  if (o.format == "json")
    print_json(out, json{{key, value}});
  else
    out << value << '\n';
}

void print_matrix(std::ostream& out, const Options& o, const TropMatrix& m) {
  if (o.format == "csv")
    out << io::to_csv(m);
  else
    print_json(out, io::to_json(m));
}

json qvol_json(const std::string& name, const QvolResult& r) {
  json j{{"name", name},
         {"value", format_scalar(Semiring::MaxPlus, r.value)},
         {"witness_columns", indices_json(r.witness_columns)},
         {"method", std::string(to_string(r.method))}};
  j["witness_perm"] = r.witness_perm ? json(r.witness_perm->images()) : json(nullptr);
  j["sign_generic_bar"] = r.sign_generic_bar ? json(std::string(to_string(*r.sign_generic_bar))) : json(nullptr);
  return j;
}

json verdict_json(const ConditionVerdict& v) { return {{"holds", v.holds}, {"witness", indices_json(v.witness)}}; }

json move_json(const EquivalenceMove& m) {
  json j{{"kind", std::string(to_string(m.kind))}};
  if (!m.permutation.empty()) j["permutation"] = m.permutation;
  if (!m.offsets.empty()) {
    json offs = json::array();
    for (const auto& x : m.offsets) offs.push_back(format_rational(x));
    j["offsets"] = offs;
  }
  return j;
}

std::vector<double> parse_t_grid(const std::string& text) {
  std::vector<double> grid;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      double t = std::stod(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      grid.push_back(t);
    } catch (const std::logic_error&) {
      throw UsageError("--t-grid expects comma-separated numbers, got '" + item + "'");
    }
  }
  if (grid.empty()) throw UsageError("--t-grid is empty");
  return grid;
}

std::string double_text(double x) {
  std::ostringstream os;
  os << std::setprecision(17) << x;
  return os.str();
}

// ---- subcommands ---------------------------------------------------------

int cmd_tdist(const Options& o, std::ostream& out) {
  TropMatrix a = load_one(o);
  if (o.rows.size() != 2) throw UsageError("--rows expects two row indices");
  if (o.rows[0] >= a.rows() || o.rows[1] >= a.rows())
    throw DimensionError("row index out of range for a matrix with " + std::to_string(a.rows()) + " rows");
  print_scalar(out, o, "tdist", format_rational(tdist(a.row(o.rows[0]), a.row(o.rows[1]))));
  return 0;
}

int cmd_tdiam(const Options& o, std::ostream& out) {
  print_scalar(out, o, "tdiam", format_rational(tdiam(load_one(o))));
  return 0;
}

int cmd_tdet(const Options& o, std::ostream& out) {
  TropMatrix a = load_one(o);
  a.require_square("tdet");
  TdetResult r = tdet(a);
  if (o.format == "json") {
    print_json(out, {{"tdet", format_scalar(a.semiring(), r.value)},
                     {"witness", r.witness ? json(r.witness->images()) : json(nullptr)}});
  } else {
    out << format_scalar(a.semiring(), r.value) << '\n';
  }
  return 0;
}

int cmd_tvol(const Options& o, std::ostream& out) {
  print_scalar(out, o, "tvol", format_rational(tvol(load_one(o))));
  return 0;
}

int cmd_standardize(const Options& o, std::ostream& out) {
  StandardVariant v = variant_flag(o);
  StandardForm sf = to_standard(load_one(o), v);
  if (o.format == "csv") {
    out << io::to_csv(sf.matrix);
    return 0;
  }
  json trail = json::array();
  for (const auto& m : sf.trail) trail.push_back(move_json(m));
  print_json(out, {{"variant", std::string(to_string(v))}, {"matrix", io::to_json(sf.matrix)}, {"trail", trail}});
  return 0;
}

int cmd_iso_check(const Options& o, std::ostream& out) {
  StandardVariant v = variant_flag(o);
  TropMatrix a = load_one(o, semiring_of(v));
  if (o.standardize_first) a = to_standard(a, v).matrix;
  IsoReport r = check_conditions(a, v);
  print_json(out, {{"variant", std::string(to_string(v))},
                   {"conditions",
                    {{"i", verdict_json(r.cond_i)},
                     {"ii", verdict_json(r.cond_ii)},
                     {"iii", verdict_json(r.cond_iii)},
                     {"iv", verdict_json(r.cond_iv)}}},
                   {"strict_iv", r.strict_iv},
                   {"tdiam", format_rational(r.tdiam)},
                   {"tvol", format_rational(r.tvol)},
                   {"classification", std::string(to_string(r.classification))}});
  return 0;
}

int cmd_iso_sample(const Options& o, std::ostream& out) {
  if (o.count == 0) throw UsageError("--count must be positive");
  SamplerOptions so;
  so.require_strict = o.strict;
  std::vector<std::optional<TropMatrix>> got(o.count);
  std::exception_ptr failure;
  std::mutex failure_mutex;
  // Sample k uses its own stream seeded from (seed, k), so the output does
  // not depend on the number of workers.
  auto work = [&](std::size_t first) {
    for (std::size_t k = first; k < o.count; k += std::max(1u, o.jobs)) {
      try {
        std::seed_seq seq{static_cast<std::uint32_t>(o.seed), static_cast<std::uint32_t>(o.seed >> 32),
                          static_cast<std::uint32_t>(k), static_cast<std::uint32_t>(k >> 32)};
        std::mt19937_64 rng(seq);
        got[k] = sample_isodiametric(o.dim, rng, so);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        return;
      }
    }
  };
  const unsigned workers = std::max(1u, std::min<unsigned>(o.jobs, static_cast<unsigned>(o.count)));
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work, w);
  work(0);
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);

  if (o.format == "csv") {
    for (std::size_t k = 0; k < got.size(); ++k) out << (k ? "\n" : "") << io::to_csv(*got[k]);
    return 0;
  }
  if (o.count == 1) {
    print_json(out, io::to_json(*got[0]));
  } else {
    json arr = json::array();
    for (const auto& m : got) arr.push_back(io::to_json(*m));
    print_json(out, arr);
  }
  return 0;
}

int cmd_kleene(const Options& o, std::ostream& out) {
  print_matrix(out, o, kleene_star(load_one(o, Semiring::MinPlus)));
  return 0;
}

int cmd_polytrope(const Options& o, std::ostream& out) {
  VertexOptions vo;
  vo.jobs = std::max(1u, o.jobs);
  Polytrope p = build_polytrope(load_one(o, Semiring::MinPlus), vo);
  json rep = polytrope_report(p);
  if (!o.svg.empty()) io::write_file(o.svg, render_svg(p));
  if (!o.report.empty()) {
    io::write_file(o.report, rep.dump(2) + "\n");
    out << "facets " << p.irredundant.size() << "\nvertices " << p.vertices.size() << "\nsimple "
        << (rep["simple"].get<bool>() ? "true" : "false") << '\n';
  } else {
    print_json(out, rep);
  }
  return 0;
}

int cmd_render(const Options& o, std::ostream& out) {
  std::string svg = render_svg(build_polytrope(load_one(o, Semiring::MinPlus)));
  if (o.svg.empty())
    out << svg;
  else
    io::write_file(o.svg, svg);
  return 0;
}

int cmd_qvol(const Options& o, std::ostream& out) {
  const std::size_t cap = resolve_cap(o);
  QvolOptions qo;
  qo.cap = cap;
  QvolMethod method = parse_qvol_method(o.method);
  json arr = json::array();
  auto set = io::load_matrix_set(o.input, semiring_flag(o), Semiring::MaxPlus);
  for (const auto& nm : set) {
    if (o.require_generic) qvol(nm.matrix, cap);  // throws unless bar(A) is sign-generic
    arr.push_back(qvol_json(nm.name, qvol_plus(nm.matrix, method, qo)));
  }
  if (o.format == "csv") {
    out << "name,value,witness_columns,sign_generic_bar\n";
    for (const auto& j : arr) {
      std::string cols;
      for (const auto& c : j["witness_columns"]) cols += (cols.empty() ? "" : " ") + std::to_string(c.get<std::size_t>());
      out << j["name"].get<std::string>() << ',' << j["value"].get<std::string>() << ',' << cols << ','
          << j["sign_generic_bar"].get<std::string>() << '\n';
    }
    return 0;
  }
  print_json(out, arr.size() == 1 ? arr[0] : arr);
  return 0;
}

int cmd_sign_generic(const Options& o, std::ostream& out) {
  const std::size_t cap = resolve_cap(o);
  json arr = json::array();
  for (const auto& nm : io::load_matrix_set(o.input, semiring_flag(o), Semiring::MaxPlus)) {
    SignGenericReport r = sign_generic(nm.matrix, !o.no_bar, cap);
    arr.push_back({{"name", nm.name},
                   {"bar", !o.no_bar},
                   {"verdict", std::string(to_string(r.verdict))},
                   {"submatrices_checked", r.submatrices_checked},
                   {"witness_rows", indices_json(r.witness_rows)},
                   {"witness_columns", indices_json(r.witness_columns)}});
  }
  print_json(out, arr.size() == 1 ? arr[0] : arr);
  return 0;
}

int cmd_dequant_slope(const Options& o, std::ostream& out) {
  const std::size_t cap = resolve_cap(o);
  std::vector<double> grid = o.t_grid.empty() ? default_t_grid() : parse_t_grid(o.t_grid);
  TropMatrix a = load_one(o, Semiring::MaxPlus);
  SlopeResult r = dequant_slope(a, grid, cap);
  TropScalar q = qvol(a, cap);
  if (o.format == "json") {
    json samples = json::array();
    for (const auto& s : r.samples) samples.push_back({{"t", s.t}, {"volume", s.volume}, {"log_ratio", s.log_ratio}});
    print_json(out, {{"samples", samples},
                     {"ratio_at_largest_t", r.ratio_at_largest_t},
                     {"slope", r.slope},
                     {"qvol", format_scalar(Semiring::MaxPlus, q)}});
    return 0;
  }
  out << "t,volume,log_ratio\n";
  for (const auto& s : r.samples)
    out << double_text(s.t) << ',' << double_text(s.volume) << ',' << double_text(s.log_ratio) << '\n';
  out << "# slope," << double_text(r.slope) << "\n# qvol," << format_scalar(Semiring::MaxPlus, q) << '\n';
  return 0;
}

int cmd_bound_check(const Options& o, std::ostream& out) {
  TropMatrix a = load_one(o, Semiring::MaxPlus);
  OrdinaryMatrix m(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (a(i, j).is_bottom()) throw PreconditionError("bound-check needs finite entries");
      m[i].push_back(a.value(i, j));
    }
  BoundReport r = volume_bound_check(m);
  print_json(out, {{"volume", format_rational(r.volume)},
                   {"alpha", r.alpha},
                   {"qvol_log", format_scalar(Semiring::MaxPlus, r.qvol_log)},
                   {"bound", r.bound},
                   {"holds", r.holds}});
  return 0;
}

int cmd_paper_suite(const Options& o, std::ostream& out) {
  auto rows = reference_suite(std::max(1u, o.jobs));
  std::size_t width = 4;
  for (const auto& r : rows) width = std::max(width, r.name.size());
  bool all = true;
  for (const auto& r : rows) {
    out << (r.pass ? "PASS" : "FAIL") << "  " << std::left << std::setw(static_cast<int>(width)) << r.name
        << "  expected " << r.expected << "  observed " << r.observed << '\n';
    all = all && r.pass;
  }
  out << (all ? "all " : "some ") << "checks " << (all ? "passed" : "failed") << " (" << rows.size() << ")\n";
  return all ? 0 : 1;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int k = 1; k < argc; ++k) args.emplace_back(argv[k]);
  return run(args, out, err);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Tropical metric quantities, isodiametric matrices, polytropes and dequantized volume", "tropiso"};
  app.require_subcommand(1);
  Options o;

  auto input = [&](CLI::App* s) { s->add_option("input", o.input, "matrix file (.json or .csv)")->required(); };
  auto semiring = [&](CLI::App* s) {
    s->add_option("--semiring", o.semiring, "read the matrix over min or max")->check(CLI::IsMember({"min", "max"}));
  };
  auto format = [&](CLI::App* s) {
    s->add_option("--format", o.format, "output format")->check(CLI::IsMember({"json", "csv"}));
  };
  auto cap = [&](CLI::App* s) {
    s->add_option("--cap", o.cap, "enumeration cap for optimal permutations")->check(CLI::PositiveNumber);
  };
  auto jobs = [&](CLI::App* s) { s->add_option("--jobs", o.jobs, "worker threads")->check(CLI::PositiveNumber); };
  auto variant = [&](CLI::App* s) {
    s->add_option("--variant", o.variant, "standard form")->check(CLI::IsMember({"min", "max"}));
  };

  std::map<std::string, std::function<int(const Options&, std::ostream&)>> handlers;
  auto add = [&](const std::string& name, const std::string& help, auto handler) {
    CLI::App* s = app.add_subcommand(name, help);
    handlers[name] = handler;
    return s;
  };

  auto* s = add("tdist", "tropical distance between two rows", cmd_tdist);
  input(s), semiring(s), format(s);
  s->add_option("--rows", o.rows, "two row indices (0-based)")->delimiter(',')->expected(2);
  s = add("tdiam", "tropical diameter of a square matrix", cmd_tdiam);
  input(s), semiring(s), format(s);
  s = add("tdet", "tropical determinant and an optimal permutation", cmd_tdet);
  input(s), semiring(s), format(s);
  s = add("tvol", "tropical volume |tdet - second best|", cmd_tvol);
  input(s), semiring(s), format(s);
  s = add("standardize", "equivalent max- or min-standard matrix", cmd_standardize);
  input(s), semiring(s), format(s), variant(s);
  s = add("iso-check", "isodiametric conditions of a standard matrix", cmd_iso_check);
  input(s), semiring(s), variant(s);
  s->add_flag("--standardize", o.standardize_first, "standardize before checking");
  s = add("iso-sample", "random isodiametric min-standard matrices", cmd_iso_sample);
  format(s), jobs(s);
  s->add_option("--dim", o.dim, "dimension d >= 3")->check(CLI::Range(3, 64));
  s->add_option("--seed", o.seed, "random seed");
  s->add_option("--count", o.count, "number of matrices");
  s->add_flag("--strict", o.strict, "require strict triangle inequalities");
  s = add("kleene", "Kleene star of a min-plus matrix", cmd_kleene);
  input(s), semiring(s), format(s);
  s = add("polytrope", "facets, vertices and profile of the polytrope of B*", cmd_polytrope);
  input(s), semiring(s), jobs(s);
  s->add_option("--report", o.report, "write the JSON report here");
  s->add_option("--svg", o.svg, "write an SVG drawing here (d = 3)");
  s = add("render", "SVG drawing of a planar polytrope", cmd_render);
  input(s), semiring(s);
  s->add_option("--svg", o.svg, "output path (stdout when omitted)");
  s = add("qvol", "upper dequantized volume of each matrix in the file", cmd_qvol);
  input(s), semiring(s), format(s), cap(s);
  s->add_option("--method", o.method, "brute or lp")->check(CLI::IsMember({"brute", "lp"}));
  s->add_flag("--require-generic", o.require_generic, "fail unless the barred matrix is sign-generic");
  s = add("sign-generic", "parity test on every maximal square submatrix", cmd_sign_generic);
  input(s), semiring(s), cap(s);
  s->add_flag("--no-bar", o.no_bar, "test A itself instead of the barred matrix");
  s = add("dequant-slope", "log-volume slope of the monomial lift", cmd_dequant_slope);
  input(s), semiring(s), format(s), cap(s);
  s->add_option("--t-grid", o.t_grid, "comma-separated parameters t > 1");
  s = add("bound-check", "volume bound for a nonnegative ordinary matrix", cmd_bound_check);
  input(s);
  s = add("paper-suite", "recompute the published worked examples", cmd_paper_suite);
  jobs(s);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  for (const auto* sub : app.get_subcommands()) {
    try {
      return handlers.at(sub->get_name())(o, out);
    } catch (const UsageError& e) {
      err << "usage: " << e.what() << '\n';
      return 2;
    } catch (const Error& e) {
      err << "ERROR:" << e.kind() << ':' << e.what() << '\n';
      return 1;
    } catch (const std::exception& e) {
      err << "ERROR:internal:" << e.what() << '\n';
      return 1;
    }
  }
  return 2;
}

}  // namespace tropiso::cli
