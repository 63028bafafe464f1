#include "indexdens/cli_core.hpp"

#include <omp.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "indexdens/artin.hpp"
#include "indexdens/density.hpp"
#include "indexdens/harness.hpp"
#include "indexdens/lfun.hpp"

namespace indexdens {

namespace {

using nlohmann::json;

enum class Fmt { table, records, csv };

Fmt parse_fmt(const std::string& s) {
  if (s == "table") return Fmt::table;
  if (s == "records") return Fmt::records;
  if (s == "csv") return Fmt::csv;
  throw std::invalid_argument("unknown format: " + s);
}

mpfr_prec_t prec_for(long digits, long prec_override) {
  if (prec_override > 0) return static_cast<mpfr_prec_t>(prec_override);
  long p = static_cast<long>(std::ceil(static_cast<double>(digits) * 3.3219280948873623)) + 16;
  return static_cast<mpfr_prec_t>(std::max<long>(192, p));
}

json dec_json(const Real& x, int digits) {
  Decimal d = format_real(x, digits);
  return json{{"value", d.digits}, {"error_radius", d.radius}, {"fraction_digits", d.guaranteed}};
}

json cx_json(const Complex& z, int digits) {
  return json{{"re", dec_json(z.re, digits)}, {"im", dec_json(z.im, digits)}};
}

std::string dec_str(const Real& x, int digits) {
  Decimal d = format_real(x, digits);
  if (d.radius == "0") return d.digits;
  return d.digits + " (+/- " + d.radius + ")";
}

std::string cx_str(const Complex& z, int digits) {
  if (z.im.is_exact() && z.im.to_double() == 0.0) return dec_str(z.re, digits);
  std::string im = dec_str(z.im, digits);
  if (!im.empty() && im[0] == '-') return dec_str(z.re, digits) + " - i*" + im.substr(1);
  return dec_str(z.re, digits) + " + i*" + im;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string r = "\"";
  for (char c : s) {
    if (c == '"') r += "\"\"";
    else r += c;
  }
  return r + "\"";
}

void csv_flatten(const json& j, const std::string& prefix, std::ostream& out) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it)
      csv_flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
  } else if (j.is_array()) {
    std::size_t i = 0;
    for (const auto& v : j) csv_flatten(v, prefix + "[" + std::to_string(i++) + "]", out);
  } else if (j.is_string()) {
    out << csv_escape(prefix) << "," << csv_escape(j.get<std::string>()) << "\n";
  } else {
    out << csv_escape(prefix) << "," << j.dump() << "\n";
  }
}

void emit(const json& rec, Fmt fmt, std::ostream& out) {
  if (fmt == Fmt::records) out << rec.dump(2) << "\n";
  else csv_flatten(rec, "", out);
}

std::string sci(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

json model_json(const DegreeModel& m) {
  json C = json::object();
  for (const auto& [g, c] : m.C) C[std::to_string(g)] = c;
  return json{{"name", m.name},
              {"description", m.description},
              {"rank", m.rank},
              {"n0", m.n0},
              {"C", C}};
}

DegreeModel load_model(const std::string& spec) {
  for (const auto& n : DegreeModel::builtin_names())
    if (n == spec) return DegreeModel::builtin(spec);
  return DegreeModel::parse_file(spec);
}

double seconds_since(const std::chrono::steady_clock::time_point& t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// options shared by all subcommands
struct Ctx {
  long digits = 20;
  long prec = 0;
  long terms = 0;
  int threads = 0;
  std::string format = "table";
  std::string model = "generic-r1";

  Fmt fmt() const { return parse_fmt(format); }
  mpfr_prec_t p() const { return prec_for(digits, prec); }
  int idigits() const { return static_cast<int>(digits); }
};

RootOfUnity parse_root(const std::string& v) {
  if (v == "1") return RootOfUnity::one();
  if (v == "-1") return RootOfUnity::make(1, 2);
  if (v == "i") return RootOfUnity::make(1, 4);
  if (v == "-i") return RootOfUnity::make(3, 4);
  if (v.size() > 3 && v.compare(0, 2, "e(") == 0 && v.back() == ')') {
    const std::string body = v.substr(2, v.size() - 3);
    const auto slash = body.find('/');
    if (slash == std::string::npos) throw std::invalid_argument("expected e(k/m): " + v);
    const long k = std::stol(body.substr(0, slash));
    const long m = std::stol(body.substr(slash + 1));
    if (m <= 0) throw std::invalid_argument("bad root of unity order: " + v);
    return RootOfUnity::make(k, m);
  }
  throw std::invalid_argument("cannot parse root of unity: " + v);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    if (pos == std::string::npos) {
      out.push_back(s.substr(start));
      return out;
    }
    out.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

}  // namespace

DirichletCharacter resolve_character(const CharacterGroup& G, const std::string& selector) {
  if (selector.empty() || selector == "principal") return G.principal();
  if (selector.compare(0, 5, "exps:") == 0) {
    const auto parts = split(selector.substr(5), ',');
    const auto& orders = G.group()->orders();
    if (parts.size() != orders.size())
      throw std::invalid_argument("selector needs " + std::to_string(orders.size()) +
                                  " exponents for modulus " + std::to_string(G.modulus()));
    std::vector<std::int32_t> want(parts.size());
    for (std::size_t i = 0; i < parts.size(); ++i) {
      long c = std::stol(parts[i]);
      const long o = orders[i];
      c %= o;
      if (c < 0) c += o;
      want[i] = static_cast<std::int32_t>(c);
    }
    for (const auto& chi : G.all())
      if (chi.exps == want) return chi;
    throw std::invalid_argument("no character with those exponents");  // unreachable
  }
  if (selector.compare(0, 4, "pin:") == 0) {
    std::vector<std::pair<long long, RootOfUnity>> pins;
    for (const auto& part : split(selector.substr(4), ',')) {
      const auto eq = part.find('=');
      if (eq == std::string::npos)
        throw std::invalid_argument("pin must look like g=value: " + part);
      const long long g = std::stoll(part.substr(0, eq));
      if (!G.group()->is_unit(g))
        throw std::invalid_argument("pinned element " + std::to_string(g) +
                                    " is not a unit mod " + std::to_string(G.modulus()));
      pins.emplace_back(g, parse_root(part.substr(eq + 1)));
    }
    const DirichletCharacter* found = nullptr;
    for (const auto& chi : G.all()) {
      bool ok = true;
      for (const auto& [g, v] : pins)
        if (!(chi.eval(g) == v)) {
          ok = false;
          break;
        }
      if (!ok) continue;
      if (found)
        throw std::invalid_argument("ambiguous selector \"" + selector +
                                    "\": more than one character matches");
      found = &chi;
    }
    if (!found)
      throw std::invalid_argument("no character mod " + std::to_string(G.modulus()) +
                                  " matches \"" + selector + "\"");
    return *found;
  }
  throw std::invalid_argument("unknown character selector: " + selector);
}

namespace {

// ---- reference tables bundled with the tool ----

struct NamedComplex {
  const char* name;
  double re, im;
};

// B_chi(1) for the characters mod 5; psi is pinned by psi(2) = i.
constexpr NamedComplex kTable2[] = {
    {"psi", 0.34645514515465, 0.21283903970350},
    {"psi^2", 0.12284254160167, 0.0},
    {"psi^3", 0.34645514515465, -0.21283903970350},
    {"psi^4", 0.95, 0.0},
};

constexpr double kGoldenTheory[5] = {0.100000, 0.418205, 0.296724, 0.0950872, 0.0899840};
constexpr double kSecondTheory[5] = {0.100000, 0.451872, 0.266393, 0.0995570, 0.0821785};
// half-width of one unit in the last printed decimal place, with margin for
// the table being truncated rather than rounded
constexpr double kTheoryTol[5] = {1.05e-6, 1.05e-6, 1.05e-6, 1.05e-7, 1.05e-7};

constexpr double kGoldenEmpirical[5] = {0.100093, 0.419351, 0.296954, 0.0947177, 0.0888838};
constexpr double kSecondEmpirical[5] = {0.099787, 0.450979, 0.267518, 0.0996599, 0.0820564};
constexpr double kEmpiricalTol = 2e-4;

void verify_table2(std::vector<VerifyEntry>& out) {
  CharacterGroup G(5);
  const DirichletCharacter psi = resolve_character(G, "pin:2=i");
  std::vector<DirichletCharacter> chis{psi, psi.times(psi), psi.times(psi).times(psi),
                                       G.principal()};
  for (std::size_t i = 0; i < chis.size(); ++i) {
    const BChiResult res = b_chi(chis[i], 1, 1000000, 192);
    const auto push = [&](const char* part, double comp, double expd) {
      VerifyEntry e;
      e.name = std::string("B(") + kTable2[i].name + ")." + part;
      e.computed = comp;
      e.expected = expd;
      e.tol = 1e-13;
      e.delta = std::abs(comp - expd);
      e.pass = e.delta <= e.tol;
      out.push_back(e);
    };
    push("re", res.value.re.to_double(), kTable2[i].re);
    push("im", res.value.im.to_double(), kTable2[i].im);
  }
}

void verify_table1_theory(std::vector<VerifyEntry>& out) {
  const struct {
    const char* tag;
    const char* model;
    const double* row;
  } rows[] = {
      {"golden", "q-sqrt5-golden", kGoldenTheory},
      {"second", "q-sqrt5-second", kSecondTheory},
  };
  DensityOptions opts;
  opts.prec = 160;
  for (const auto& r : rows) {
    const DegreeModel& m = DegreeModel::builtin(r.model);
    for (std::uint64_t a = 0; a < 5; ++a) {
      const DensityReport rep = dens(a, 5, m, opts);
      VerifyEntry e;
      e.name = std::string(r.tag) + ".dens(" + std::to_string(a) + ",5)";
      e.computed = rep.density.to_double();
      e.expected = r.row[a];
      e.tol = kTheoryTol[a];
      e.delta = std::abs(e.computed - e.expected);
      e.pass = e.delta <= e.tol;
      out.push_back(e);
    }
  }
}

void verify_table1_empirical(std::vector<VerifyEntry>& out, std::uint64_t x, int threads) {
  const QuadraticField K = QuadraticField::real_quadratic(5);
  const struct {
    const char* tag;
    const char* gen;
    const double* row;
  } rows[] = {
      {"golden", "(1+sqrt5)/2", kGoldenEmpirical},
      {"second", "-(5+sqrt5)/2", kSecondEmpirical},
  };
  for (const auto& r : rows) {
    GroupSpec G;
    G.gens.push_back(parse_element(r.gen, K));
    CountOptions o;
    o.x = x;
    o.modulus = 5;
    o.include_skipped_in_total = true;  // ratios against all primes of norm <= x
    o.threads = threads;
    const CountReport rep = count(K, G, o);
    const auto ratios = rep.ratios();
    for (std::uint64_t a = 0; a < 5; ++a) {
      VerifyEntry e;
      e.name = std::string(r.tag) + ".ratio(" + std::to_string(a) + ",5)";
      e.computed = ratios[a];
      e.expected = r.row[a];
      e.tol = kEmpiricalTol;
      e.delta = std::abs(e.computed - e.expected);
      e.pass = e.delta <= e.tol;
      out.push_back(e);
    }
  }
}

}  // namespace

std::vector<VerifyEntry> verify_table(const std::string& which, std::uint64_t x, int threads) {
  if (threads > 0) omp_set_num_threads(threads);
  std::vector<VerifyEntry> out;
  if (which == "table2") {
    verify_table2(out);
  } else if (which == "table1-theoretical") {
    verify_table1_theory(out);
  } else if (which == "table1-empirical") {
    verify_table1_empirical(out, x, threads);
  } else if (which == "table1") {
    verify_table1_theory(out);
    verify_table1_empirical(out, x, threads);
  } else {
    throw std::invalid_argument("unknown verification table: " + which);
  }
  return out;
}

namespace {

// ---- subcommand handlers ----

int cmd_bchi(const Ctx& ctx, long d, const std::string& sel, long rank,
             const std::vector<std::string>& argv, std::ostream& out) {
  const auto t0 = std::chrono::steady_clock::now();
  CharacterGroup G(d);
  const DirichletCharacter chi = resolve_character(G, sel);
  Complex val;
  json values;
  if (ctx.terms > 0) {
    const BChiResult res = b_chi(chi, rank, static_cast<std::size_t>(ctx.terms), ctx.p());
    val = res.value;
    values["terms"] = res.n_terms;
    values["tail_band"] = sci(res.e_bound);
  } else {
    val = b_chi_auto(chi, rank, ctx.p());
    values["terms"] = "auto";
  }
  values["B"] = cx_json(val, ctx.idigits());
  values["character"] = chi.label();
  values["rank"] = rank;
  if (chi.is_principal()) values["exact"] = b_chi_principal_exact(d, rank).get_str();
  const double el = seconds_since(t0);

  if (ctx.fmt() == Fmt::table) {
    out << "B_chi(" << rank << ") for " << chi.label() << "\n";
    out << "  value = " << cx_str(val, ctx.idigits()) << "\n";
    if (chi.is_principal())
      out << "  exact = " << b_chi_principal_exact(d, rank).get_str() << "\n";
    if (ctx.terms > 0) out << "  terms = " << ctx.terms << "\n";
    out << "  elapsed = " << sci(el) << " s\n";
    return 0;
  }
  json rec{{"command", "bchi"},
           {"args", argv},
           {"inputs", json{{"modulus", d}, {"chi", sel}, {"rank", rank}, {"digits", ctx.digits}}},
           {"values", values},
           {"timing_seconds", el}};
  emit(rec, ctx.fmt(), out);
  return 0;
}

int cmd_lvalue(const Ctx& ctx, long d, const std::string& sel, long s,
               const std::vector<std::string>& argv, std::ostream& out) {
  const auto t0 = std::chrono::steady_clock::now();
  CharacterGroup G(d);
  const DirichletCharacter chi = resolve_character(G, sel);
  const Complex val = dirichlet_L(s, chi, ctx.p());
  const double el = seconds_since(t0);
  if (ctx.fmt() == Fmt::table) {
    out << "L(" << s << ", " << chi.label() << ")\n";
    out << "  value = " << cx_str(val, ctx.idigits()) << "\n";
    out << "  elapsed = " << sci(el) << " s\n";
    return 0;
  }
  json rec{{"command", "lvalue"},
           {"args", argv},
           {"inputs", json{{"modulus", d}, {"chi", sel}, {"s", s}, {"digits", ctx.digits}}},
           {"values", json{{"L", cx_json(val, ctx.idigits())}, {"character", chi.label()}}},
           {"timing_seconds", el}};
  emit(rec, ctx.fmt(), out);
  return 0;
}

int cmd_artin(const Ctx& ctx, long rank, const std::vector<std::string>& argv,
              std::ostream& out) {
  const auto t0 = std::chrono::steady_clock::now();
  const Real A = artin_constant(rank, ctx.p());
  const double el = seconds_since(t0);
  if (ctx.fmt() == Fmt::table) {
    out << "A_" << rank << " = " << dec_str(A, ctx.idigits()) << "\n";
    out << "  elapsed = " << sci(el) << " s\n";
    return 0;
  }
  json rec{{"command", "artin"},
           {"args", argv},
           {"inputs", json{{"rank", rank}, {"digits", ctx.digits}}},
           {"values", json{{"A", dec_json(A, ctx.idigits())}}},
           {"timing_seconds", el}};
  emit(rec, ctx.fmt(), out);
  return 0;
}

json density_values(const DensityReport& rep, const DegreeModel& model, int digits) {
  json values;
  values["density"] = dec_json(rep.density, digits);
  values["a"] = rep.a;
  values["d"] = rep.d;
  if (rep.exact) values["exact"] = rep.exact_value.get_str();
  values["model"] = model_json(model);
  json coeffs = json::array();
  for (const auto& [label, c] : rep.coefficients)
    coeffs.push_back(json{{"character", label}, {"coefficient", cx_json(c, digits)}});
  values["coefficients"] = coeffs;
  json bs = json::array();
  for (const auto& [label, b] : rep.b_values)
    bs.push_back(json{{"character", label}, {"B", cx_json(b, digits)}});
  values["b_values"] = bs;
  return values;
}

void density_table(const DensityReport& rep, const DegreeModel& model, int digits,
                   std::ostream& out, bool with_coeffs) {
  out << "dens(" << rep.a << ", " << rep.d << ")  [model " << model.name << "]\n";
  out << "  density = " << dec_str(rep.density, digits) << "\n";
  if (rep.exact) out << "  exact = " << rep.exact_value.get_str() << "\n";
  if (with_coeffs && !rep.coefficients.empty()) {
    out << "  per-character coefficients (conj(chi(a'))/phi(d') * sum over divisors):\n";
    for (const auto& [label, c] : rep.coefficients)
      out << "    " << label << ": " << cx_str(c, digits) << "\n";
    out << "  B values:\n";
    for (const auto& [label, b] : rep.b_values)
      out << "    " << label << ": " << cx_str(b, digits) << "\n";
  }
}

int cmd_density(const Ctx& ctx, std::uint64_t a, std::uint64_t d, bool describe, bool coeffs_only,
                const std::vector<std::string>& argv, std::ostream& out) {
  const DegreeModel model = load_model(ctx.model);
  if (describe) {
    if (ctx.fmt() == Fmt::table) {
      out << "model " << model.name << "\n";
      out << "  rank = " << model.rank << "\n  n0 = " << model.n0 << "\n";
      for (const auto& [g, c] : model.C) out << "  C(" << g << ") = " << c << "\n";
      out << "  " << model.description << "\n";
      return 0;
    }
    emit(json{{"command", "density"}, {"model", model_json(model)}}, ctx.fmt(), out);
    return 0;
  }
  const auto t0 = std::chrono::steady_clock::now();
  DensityOptions opts;
  opts.prec = ctx.p();
  opts.b_terms = static_cast<std::size_t>(ctx.terms);
  const DensityReport rep = dens(a, d, model, opts);
  const double el = seconds_since(t0);
  if (ctx.fmt() == Fmt::table) {
    density_table(rep, model, ctx.idigits(), out, true);
    out << "  elapsed = " << sci(el) << " s\n";
    return 0;
  }
  json rec{{"command", coeffs_only ? "coeffs" : "density"},
           {"args", argv},
           {"inputs",
            json{{"a", a}, {"d", d}, {"model", ctx.model}, {"digits", ctx.digits}}},
           {"values", density_values(rep, model, ctx.idigits())},
           {"timing_seconds", el}};
  emit(rec, ctx.fmt(), out);
  return 0;
}

int cmd_rho(const Ctx& ctx, std::uint64_t a, std::uint64_t d,
            const std::vector<std::string>& argv, std::ostream& out) {
  Ctx c2 = ctx;
  c2.model = "generic-r1";
  return cmd_density(c2, a, d, false, false, argv, out);
}

int cmd_count(const Ctx& ctx, const std::string& field, const std::vector<std::string>& gens,
              std::uint64_t x, std::uint64_t modulus, std::uint64_t cap, bool include_skipped,
              bool reference, std::uint64_t ceiling, const std::vector<std::string>& argv,
              std::ostream& out) {
  if (x > ceiling)
    throw std::invalid_argument("x exceeds the configured ceiling (" + std::to_string(ceiling) +
                                "); raise --ceiling explicitly");
  const QuadraticField K = (field == "Q" || field == "q")
                               ? QuadraticField::rationals()
                               : QuadraticField::real_quadratic(std::stoll(field));
  GroupSpec G;
  for (const auto& g : gens) G.gens.push_back(parse_element(g, K));
  CountOptions o;
  o.x = x;
  o.modulus = modulus;
  o.histogram_cap = cap;
  o.include_skipped_in_total = include_skipped;
  o.threads = ctx.threads;
  const auto t0 = std::chrono::steady_clock::now();
  const CountReport rep = reference ? count_reference(K, G, o) : count(K, G, o);
  const double el = seconds_since(t0);
  const auto ratios = rep.ratios();

  if (ctx.fmt() == Fmt::table) {
    out << "index counts, norm <= " << x << ", field "
        << (K.rational ? std::string("Q") : "Q(sqrt" + std::to_string(K.D) + ")") << "\n";
    out << "  generators:";
    for (const auto& g : gens) out << " " << g;
    out << "\n";
    out << "  primes with defined index   = " << rep.counted << "\n";
    out << "  skipped (ramified/non-unit) = " << rep.skipped << "\n";
    char buf[64];
    for (std::uint64_t a = 0; a < modulus; ++a) {
      std::snprintf(buf, sizeof buf, "%.6f", ratios[a]);
      out << "  a=" << a << "  count=" << rep.counts[a] << "  ratio=" << buf << "\n";
    }
    out << "  elapsed = " << sci(el) << " s\n";
    return 0;
  }

  json hist = json::object();
  for (const auto& [k, v] : rep.histogram) hist[std::to_string(k)] = v;
  json rat = json::array();
  char buf[64];
  for (std::uint64_t a = 0; a < modulus; ++a) {
    std::snprintf(buf, sizeof buf, "%.6f", ratios[a]);
    rat.push_back(std::string(buf));
  }
  json rec{{"command", "count"},
           {"args", argv},
           {"inputs", json{{"field", field},
                           {"generators", gens},
                           {"x", x},
                           {"modulus", modulus},
                           {"include_skipped_in_total", include_skipped}}},
           {"values", json{{"counts", rep.counts},
                           {"ratios", rat},
                           {"counted", rep.counted},
                           {"skipped", rep.skipped},
                           {"histogram", hist}}},
           {"timing_seconds", el}};
  emit(rec, ctx.fmt(), out);
  return 0;
}

int cmd_verify(const Ctx& ctx, const std::string& table, std::uint64_t x,
               const std::vector<std::string>& argv, std::ostream& out) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto entries = verify_table(table, x, ctx.threads);
  const double el = seconds_since(t0);
  std::size_t fails = 0;
  for (const auto& e : entries)
    if (!e.pass) ++fails;

  if (ctx.fmt() == Fmt::records) {
    json arr = json::array();
    for (const auto& e : entries)
      arr.push_back(json{{"name", e.name},
                         {"computed", e.computed},
                         {"expected", e.expected},
                         {"delta", e.delta},
                         {"tol", e.tol},
                         {"pass", e.pass}});
    emit(json{{"command", "verify"},
              {"args", argv},
              {"inputs", json{{"table", table}, {"x", x}}},
              {"values", json{{"entries", arr}, {"failures", fails}}},
              {"timing_seconds", el}},
         Fmt::records, out);
    return fails == 0 ? 0 : 1;
  }

  char buf[160];
  for (const auto& e : entries) {
    std::snprintf(buf, sizeof buf, "%s  %-22s computed=%-.15g expected=%-.15g delta=%.2e tol=%.1e",
                  e.pass ? "PASS" : "FAIL", e.name.c_str(), e.computed, e.expected, e.delta,
                  e.tol);
    out << buf << "\n";
  }
  out << (entries.size() - fails) << "/" << entries.size() << " entries passed, elapsed "
      << sci(el) << " s\n";
  return fails == 0 ? 0 : 1;
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"densities of primes with prescribed multiplicative index, and empirical checks"};
  app.name("indexdens");
  Ctx ctx;
  app.add_option("--digits", ctx.digits, "decimal digits to print")->capture_default_str();
  app.add_option("--prec", ctx.prec, "working precision in bits (default derived from --digits)");
  app.add_option("--terms", ctx.terms, "product/series length (0 = choose from precision)");
  app.add_option("--threads", ctx.threads, "OpenMP thread count (0 = library default)");
  app.add_option("--format", ctx.format, "output format")
      ->check(CLI::IsMember({"table", "records", "csv"}))
      ->capture_default_str();
  app.add_option("--model", ctx.model, "degree model: builtin name or model file")
      ->capture_default_str();
  app.require_subcommand(1);

  auto* bchi = app.add_subcommand("bchi", "Artin-type constant B_chi(r)");
  bchi->fallthrough();
  long bchi_d = 5, bchi_rank = 1;
  std::string bchi_sel = "principal";
  bchi->add_option("-d,--modulus", bchi_d, "character modulus")->required();
  bchi->add_option("--chi", bchi_sel, "character selector")->capture_default_str();
  bchi->add_option("-r,--rank", bchi_rank, "rank r")->capture_default_str();

  auto* lvalue = app.add_subcommand("lvalue", "Dirichlet L-value L(s, chi), integer s >= 2");
  lvalue->fallthrough();
  long lv_d = 1, lv_s = 2;
  std::string lv_sel = "principal";
  lvalue->add_option("-s,--s", lv_s, "integer argument s >= 2")->required();
  lvalue->add_option("-d,--modulus", lv_d, "character modulus")->capture_default_str();
  lvalue->add_option("--chi", lv_sel, "character selector")->capture_default_str();

  auto* artin = app.add_subcommand("artin", "constant A_r = prod_p (1 - 1/(p^r(p-1)))");
  artin->fallthrough();
  long artin_rank = 1;
  artin->add_option("-r,--rank", artin_rank, "rank r")->capture_default_str();

  auto* rho = app.add_subcommand("rho", "density for the generic rank-1 degree model");
  rho->fallthrough();
  std::uint64_t rho_a = 0, rho_d = 1;
  rho->add_option("a", rho_a, "index residue")->required();
  rho->add_option("d", rho_d, "modulus")->required();

  auto* density = app.add_subcommand("density", "density of primes with index == a (mod d)");
  density->fallthrough();
  std::uint64_t den_a = 0, den_d = 1;
  bool den_describe = false;
  density->add_option("a", den_a, "index residue");
  density->add_option("d", den_d, "modulus");
  density->add_flag("--describe", den_describe, "print the degree model and exit");

  auto* coeffs = app.add_subcommand("coeffs", "per-character coefficients of the density");
  coeffs->fallthrough();
  std::uint64_t co_a = 0, co_d = 1;
  coeffs->add_option("a", co_a, "index residue")->required();
  coeffs->add_option("d", co_d, "modulus")->required();

  auto* cnt = app.add_subcommand("count", "empirical index counts over primes of the field");
  cnt->fallthrough();
  std::string cnt_field = "Q";
  std::vector<std::string> cnt_gens;
  std::uint64_t cnt_x = 1000000, cnt_mod = 5, cnt_cap = 100, cnt_ceiling = 100000000;
  bool cnt_inc = false, cnt_ref = false;
  cnt->add_option("--field", cnt_field, "Q, or squarefree D >= 2 for Q(sqrt D)")
      ->capture_default_str();
  cnt->add_option("--gen", cnt_gens, "group generator (repeatable)")->required();
  cnt->add_option("-x,--x", cnt_x, "norm bound")->capture_default_str();
  cnt->add_option("-d,--modulus", cnt_mod, "index residue modulus")->capture_default_str();
  cnt->add_option("--cap", cnt_cap, "histogram cap")->capture_default_str();
  cnt->add_flag("--include-skipped", cnt_inc, "divide ratios by all primes, not just counted");
  cnt->add_flag("--reference", cnt_ref, "use the serial reference tally");
  cnt->add_option("--ceiling", cnt_ceiling, "largest allowed x")->capture_default_str();

  auto* verify = app.add_subcommand("verify", "check computed values against bundled tables");
  verify->fallthrough();
  std::string ver_table;
  std::uint64_t ver_x = 1000000;
  verify->add_option("--table", ver_table, "which table")
      ->required()
      ->check(CLI::IsMember({"table1", "table2", "table1-theoretical", "table1-empirical"}));
  verify->add_option("-x,--x", ver_x, "norm bound for the empirical half")
      ->capture_default_str();

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (ctx.threads > 0) omp_set_num_threads(ctx.threads);
    if (*bchi) return cmd_bchi(ctx, bchi_d, bchi_sel, bchi_rank, args, out);
    if (*lvalue) return cmd_lvalue(ctx, lv_d, lv_sel, lv_s, args, out);
    if (*artin) return cmd_artin(ctx, artin_rank, args, out);
    if (*rho) return cmd_rho(ctx, rho_a, rho_d, args, out);
    if (*density) return cmd_density(ctx, den_a, den_d, den_describe, false, args, out);
    if (*coeffs) return cmd_density(ctx, co_a, co_d, false, true, args, out);
    if (*cnt)
      return cmd_count(ctx, cnt_field, cnt_gens, cnt_x, cnt_mod, cnt_cap, cnt_inc, cnt_ref,
                       cnt_ceiling, args, out);
    if (*verify) return cmd_verify(ctx, ver_table, ver_x, args, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  err << "error: no subcommand\n";
  return 2;
}

}  // namespace indexdens
