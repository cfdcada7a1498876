#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "effdirac/constants.hpp"
#include "effdirac/coupling.hpp"
#include "effdirac/dirac.hpp"
#include "effdirac/errors.hpp"
#include "effdirac/observables.hpp"
#include "effdirac/solver.hpp"
#include "effdirac/states.hpp"

namespace effdirac::cli {

enum class Format { csv, json, human };

// A homogeneous result table. Cells are empty (monostate), text, real, or
// integer; every row has one cell per column.
using Cell = std::variant<std::monostate, std::string, double, long long>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add_row(std::vector<Cell> row) {
    if (row.size() != columns.size())
      throw NumericalError("internal: table row width mismatch");
    rows.push_back(std::move(row));
  }
};

namespace detail {

inline std::string format_double(double v, const char* spec) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), spec, v);
  return buf;
}

inline std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += "\"\"";
    else out += ch;
  }
  out += "\"";
  return out;
}

inline std::string cell_text(const Cell& c, const char* double_spec) {
  if (std::holds_alternative<std::monostate>(c)) return "";
  if (std::holds_alternative<std::string>(c)) return std::get<std::string>(c);
  if (std::holds_alternative<double>(c))
    return format_double(std::get<double>(c), double_spec);
  return std::to_string(std::get<long long>(c));
}

}  // namespace detail

inline std::string emit_csv(const Table& t) {
  std::ostringstream os;
  for (size_t i = 0; i < t.columns.size(); ++i)
    os << (i ? "," : "") << detail::csv_escape(t.columns[i]);
  os << "\n";
  for (const auto& row : t.rows) {
    for (size_t i = 0; i < row.size(); ++i)
      os << (i ? "," : "")
         << detail::csv_escape(detail::cell_text(row[i], "%.17g"));
    os << "\n";
  }
  return os.str();
}

inline std::string emit_json(const Table& t) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& row : t.rows) {
    nlohmann::ordered_json obj;
    for (size_t i = 0; i < row.size(); ++i) {
      const Cell& c = row[i];
      if (std::holds_alternative<std::monostate>(c))
        obj[t.columns[i]] = nullptr;
      else if (std::holds_alternative<std::string>(c))
        obj[t.columns[i]] = std::get<std::string>(c);
      else if (std::holds_alternative<double>(c))
        obj[t.columns[i]] = std::get<double>(c);
      else
        obj[t.columns[i]] = std::get<long long>(c);
    }
    rows.push_back(std::move(obj));
  }
  return rows.dump(2) + "\n";
}

inline std::string emit_human(const Table& t) {
  std::vector<std::vector<std::string>> texts;
  texts.reserve(t.rows.size());
  for (const auto& row : t.rows) {
    std::vector<std::string> line;
    line.reserve(row.size());
    for (const auto& c : row) {
      std::string s = detail::cell_text(c, "%.10g");
      if (s.empty() && std::holds_alternative<std::monostate>(c)) s = "-";
      line.push_back(std::move(s));
    }
    texts.push_back(std::move(line));
  }
  std::vector<size_t> width(t.columns.size());
  std::vector<bool> numeric(t.columns.size(), true);
  for (size_t i = 0; i < t.columns.size(); ++i) width[i] = t.columns[i].size();
  for (size_t r = 0; r < texts.size(); ++r)
    for (size_t i = 0; i < texts[r].size(); ++i) {
      width[i] = std::max(width[i], texts[r][i].size());
      const Cell& c = t.rows[r][i];
      if (std::holds_alternative<std::string>(c)) numeric[i] = false;
    }
  std::ostringstream os;
  auto pad = [&](const std::string& s, size_t w, bool right) {
    std::string space(w - s.size(), ' ');
    return right ? space + s : s + space;
  };
  for (size_t i = 0; i < t.columns.size(); ++i)
    os << (i ? "  " : "") << pad(t.columns[i], width[i], numeric[i]);
  os << "\n";
  for (size_t i = 0; i < t.columns.size(); ++i)
    os << (i ? "  " : "") << std::string(width[i], '-');
  os << "\n";
  for (const auto& line : texts) {
    for (size_t i = 0; i < line.size(); ++i)
      os << (i ? "  " : "") << pad(line[i], width[i], numeric[i]);
    os << "\n";
  }
  return os.str();
}

inline std::string emit(const Table& t, Format f) {
  switch (f) {
    case Format::csv: return emit_csv(t);
    case Format::json: return emit_json(t);
    case Format::human: return emit_human(t);
  }
  return {};
}

namespace detail {

inline std::optional<int> parse_int(const std::string& s) {
  if (s.empty()) return std::nullopt;
  size_t pos = 0;
  int v;
  try {
    v = std::stoi(s, &pos);
  } catch (...) {
    return std::nullopt;
  }
  if (pos != s.size()) return std::nullopt;
  return v;
}

// grammar: "A" or "A..B", inclusive
inline std::optional<std::pair<int, int>> parse_range(const std::string& s) {
  auto dots = s.find("..");
  if (dots == std::string::npos) {
    auto v = parse_int(s);
    if (!v) return std::nullopt;
    return std::make_pair(*v, *v);
  }
  auto a = parse_int(s.substr(0, dots));
  auto b = parse_int(s.substr(dots + 2));
  if (!a || !b || *a > *b) return std::nullopt;
  return std::make_pair(*a, *b);
}

inline Model parse_model(const std::string& s) {
  if (s == "dirac") return Model::dirac;
  if (s == "lamb") return Model::lamb;
  if (s == "hyperfine") return Model::hyperfine;
  return Model::combined;
}

template <class F>
auto named(int Z, const std::string& label, F&& fn) {
  try {
    return fn();
  } catch (const effdirac::Error& e) {
    throw effdirac::Error("Z=" + std::to_string(Z) + " state " + label + ": " +
                          e.what());
  }
}

struct Context {
  Settings settings;
  BetheLogTable bethe;
  std::vector<ReferenceRecord> refs;
};

inline Context load_context(const std::string& config_path,
                            const std::string& bethe_path,
                            const std::string& refs_path) {
  Settings settings;
  if (!config_path.empty())
    settings = load_settings(config_path);
  else
    settings.constants = default_constants();
  validate(settings.constants);
  Context ctx{std::move(settings),
              bethe_path.empty() ? default_bethe_table()
                                 : load_bethe_table(bethe_path),
              refs_path.empty() ? default_reference_records()
                                : load_reference_records(refs_path)};
  return ctx;
}

inline Cell opt_cell(const std::optional<double>& v) {
  if (v) return *v;
  return std::monostate{};
}

// One reference per (Z, n, quantity) for the scan table: the first theory
// record wins, otherwise the first record of any source; compare shows
// everything instead of picking
inline std::optional<ReferenceRecord> find_scan_reference(
    const std::vector<ReferenceRecord>& refs, int Z, int n, Quantity q) {
  std::optional<ReferenceRecord> fallback;
  for (const auto& r : refs) {
    if (r.Z != Z || r.n != n || r.quantity != q) continue;
    if (r.source == Source::qed_reference) return r;
    if (!fallback) fallback = r;
  }
  return fallback;
}

}  // namespace detail

inline int run(std::vector<std::string> args, std::ostream& out,
               std::ostream& err) {
  CLI::App app{"hydrogenic energy levels from an effective Coulomb-like "
               "coupling: Lamb shift and hyperfine splitting order by order"};
  app.name("effdirac");
  app.require_subcommand(1);

  std::string config_path, bethe_path, refs_path, out_path;
  std::string format_s = "csv";
  app.add_option("--config", config_path, "settings file (key = value lines)");
  app.add_option("--bethe", bethe_path, "Bethe-logarithm table (csv: n,l,L)");
  app.add_option("--refs", refs_path,
                 "reference values (csv: label,Z,n,quantity,value_MHz,source)");
  app.add_option("--format", format_s, "output format")
      ->check(CLI::IsMember({"csv", "json", "human"}));
  app.add_option("--out", out_path, "write output to this file");

  std::string z_spec = "1";
  int n = 2;
  std::string state_label;
  int spin = -1;
  std::string which_s = "dirac";
  std::string order_s = "zalpha4";
  std::string orders_s = "zalpha4,zalpha5";
  std::string quantity_s = "lamb";
  bool corrections = false;

  auto add_z = [&](CLI::App* sub) {
    sub->add_option("--z", z_spec, "nuclear charge, a single Z or a range A..B");
  };
  auto add_n = [&](CLI::App* sub) {
    sub->add_option("--n", n, "principal quantum number");
  };

  CLI::App* sp = app.add_subcommand(
      "spectrum", "solved levels at given n (all kappa, or one --state)");
  add_z(sp);
  add_n(sp);
  sp->add_option("--state", state_label, "one state label, e.g. 2s_{1/2}");
  sp->add_option("--s", spin, "total spin 0 or 1 (hyperfine kinds)")
      ->check(CLI::Range(0, 1));
  sp->add_option("--which", which_s, "coupling to apply")
      ->check(CLI::IsMember({"dirac", "lamb", "hyperfine", "combined"}));
  sp->add_flag("--corrections", corrections,
               "apply binding and magnetic corrections to the couplings");

  CLI::App* lm = app.add_subcommand(
      "lamb", "nS_1/2 - nP_1/2 splitting in MHz");
  add_z(lm);
  add_n(lm);
  lm->add_option("--order", order_s, "coupling order")
      ->check(CLI::IsMember({"zalpha4", "zalpha5"}));

  CLI::App* hf = app.add_subcommand(
      "hfs", "nS_1/2 triplet-singlet splitting in MHz");
  add_z(hf);
  add_n(hf);
  hf->add_flag("--corrections", corrections,
               "apply relativistic magnetic corrections");

  CLI::App* sc = app.add_subcommand(
      "scan", "splittings over a Z range with reference comparison");
  add_z(sc);
  add_n(sc);
  sc->add_option("--quantity", quantity_s, "what to scan")
      ->check(CLI::IsMember({"lamb", "hfs"}));
  sc->add_option("--orders", orders_s, "comma list of zalpha4,zalpha5");
  sc->add_flag("--corrections", corrections,
               "apply relativistic magnetic corrections (hfs)");

  CLI::App* ex = app.add_subcommand(
      "expand", "labeled order-by-order expansion of one level");
  add_z(ex);
  ex->add_option("--state", state_label, "state label, e.g. 2s_{1/2}")
      ->required();
  ex->add_option("--which", which_s, "expansion kind")
      ->check(CLI::IsMember({"dirac", "lamb", "hyperfine", "combined"}));
  ex->add_option("--s", spin, "total spin 0 or 1 (hyperfine kinds)")
      ->check(CLI::Range(0, 1));

  CLI::App* f1 = app.add_subcommand(
      "figure1", "Coulomb amplitude Z/q and its radiative correction "
                 "|lambda| Z/q on a log grid, n = 4, 8, 12");

  CLI::App* cp = app.add_subcommand(
      "compare", "computed splittings joined against every reference");
  add_z(cp);
  add_n(cp);
  cp->add_option("--quantity", quantity_s, "what to compute")
      ->check(CLI::IsMember({"lamb", "hfs", "both"}));
  cp->add_flag("--corrections", corrections,
               "apply relativistic magnetic corrections (hfs)");

  for (CLI::App* sub : {sp, lm, hf, sc, ex, f1, cp}) sub->fallthrough();

  try {
    std::reverse(args.begin(), args.end());
    app.parse(std::move(args));
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  auto range = detail::parse_range(z_spec);
  if (!range || range->first < 1 || range->second - range->first > 100000) {
    err << "error: --z expects Z or A..B with 1 <= A <= B, got '" << z_spec
        << "'\n";
    return 2;
  }

  std::vector<LambOrder> orders;
  {
    std::string rest = orders_s;
    while (!rest.empty()) {
      auto comma = rest.find(',');
      std::string tok = rest.substr(0, comma);
      rest = (comma == std::string::npos) ? "" : rest.substr(comma + 1);
      if (tok == "zalpha4") orders.push_back(LambOrder::zalpha4);
      else if (tok == "zalpha5") orders.push_back(LambOrder::zalpha5);
      else {
        err << "error: --orders expects a comma list of zalpha4,zalpha5\n";
        return 2;
      }
    }
    if (orders.empty()) {
      err << "error: --orders must name at least one order\n";
      return 2;
    }
  }

  Format format = format_s == "json"
                      ? Format::json
                      : (format_s == "human" ? Format::human : Format::csv);

  try {
    detail::Context ctx =
        detail::load_context(config_path, bethe_path, refs_path);
    const PhysicalConstants& c = ctx.settings.constants;
    Table t;

    if (sp->parsed()) {
      Model which = detail::parse_model(which_s);
      std::vector<QuantumState> states;
      if (!state_label.empty()) {
        QuantumState base = parse_label(state_label);
        states.push_back(spin >= 0 ? make_state(base.n, base.kappa, spin)
                                   : base);
      } else {
        for (int a = 1; a <= n; ++a) {
          states.push_back(spin >= 0 ? make_state(n, -a, spin)
                                     : make_state(n, -a));
          if (a < n)
            states.push_back(spin >= 0 ? make_state(n, a, spin)
                                       : make_state(n, a));
        }
      }
      bool binding = corrections || ctx.settings.enable_binding_correction;
      double user_delta = ctx.settings.user_delta_hyperfine;
      t.columns = {"Z",     "n",     "state",        "S",
                   "which", "epsilon", "dirac",      "beyond_dirac",
                   "beyond_dirac_MHz"};
      for (int Z = range->first; Z <= range->second; ++Z) {
        double za = Z * c.alpha;
        for (const auto& st : states) {
          std::string label = render_label(st);
          auto level = detail::named(Z, label, [&] {
            CouplingFactors g = CouplingFactors::identity();
            switch (which) {
              case Model::dirac: break;
              case Model::lamb:
                g = build_lamb_coupling(st, za, c, ctx.bethe, binding);
                break;
              case Model::hyperfine:
                g = build_hyperfine_coupling(st, za, c, corrections,
                                             user_delta);
                break;
              case Model::combined:
                g = build_combined_coupling(st, za, c, ctx.bethe, binding,
                                            corrections, user_delta);
                break;
            }
            return solve_effective(st, za, g).level;
          });
          t.add_row({(long long)Z, (long long)st.n, label,
                     st.S ? Cell((long long)*st.S) : Cell(std::monostate{}),
                     which_s, level.epsilon,
                     level.term("dirac").value_or(0.0), level.beyond_dirac(),
                     to_MHz(level.beyond_dirac(), c)});
        }
      }
    } else if (lm->parsed()) {
      LambOrder order =
          order_s == "zalpha5" ? LambOrder::zalpha5 : LambOrder::zalpha4;
      t.columns = {"Z", "n", "order", "value_MHz"};
      for (int Z = range->first; Z <= range->second; ++Z) {
        std::string label = std::to_string(n) + "s_{1/2}-" + std::to_string(n) +
                            "p_{1/2}";
        auto r = detail::named(
            Z, label, [&] { return lamb_shift(Z, n, order, c, ctx.bethe); });
        t.add_row({(long long)Z, (long long)n, r.order_label, r.value_MHz});
      }
    } else if (hf->parsed()) {
      t.columns = {"Z", "n", "order", "value_MHz", "z_extrapolated"};
      for (int Z = range->first; Z <= range->second; ++Z) {
        std::string label = std::to_string(n) + "s_{1/2}";
        auto r = detail::named(Z, label, [&] {
          return hyperfine_splitting(Z, n, c, corrections,
                                     ctx.settings.user_delta_hyperfine);
        });
        t.add_row({(long long)Z, (long long)n, r.order_label, r.value_MHz,
                   (long long)(r.z_extrapolated ? 1 : 0)});
      }
    } else if (sc->parsed()) {
      t.columns = {"Z",
                   "n",
                   "quantity",
                   "order",
                   "value_MHz",
                   "reference_MHz",
                   "reference_source",
                   "discrepancy_percent",
                   "z_extrapolated"};
      for (int Z = range->first; Z <= range->second; ++Z) {
        std::vector<SplittingResult> results;
        if (quantity_s == "lamb") {
          std::string label = std::to_string(n) + "s_{1/2}-" +
                              std::to_string(n) + "p_{1/2}";
          for (LambOrder o : orders)
            results.push_back(detail::named(
                Z, label, [&] { return lamb_shift(Z, n, o, c, ctx.bethe); }));
        } else {
          std::string label = std::to_string(n) + "s_{1/2}";
          results.push_back(detail::named(Z, label, [&] {
            return hyperfine_splitting(Z, n, c, corrections,
                                       ctx.settings.user_delta_hyperfine);
          }));
        }
        for (const auto& r : results) {
          auto ref = detail::find_scan_reference(ctx.refs, r.Z, r.n,
                                                 quantity_of(r.kind));
          std::optional<double> disc;
          if (ref && ref->value_MHz != 0.0)
            disc = 100.0 * std::abs(r.value_MHz - ref->value_MHz) /
                   std::abs(ref->value_MHz);
          t.add_row({(long long)r.Z, (long long)r.n,
                     to_string(quantity_of(r.kind)), r.order_label,
                     r.value_MHz,
                     ref ? Cell(ref->value_MHz) : Cell(std::monostate{}),
                     ref ? Cell(to_string(ref->source))
                         : Cell(std::monostate{}),
                     detail::opt_cell(disc),
                     (long long)(r.z_extrapolated ? 1 : 0)});
        }
      }
    } else if (ex->parsed()) {
      Model which = detail::parse_model(which_s);
      QuantumState base = parse_label(state_label);
      QuantumState st =
          spin >= 0 ? make_state(base.n, base.kappa, spin) : base;
      t.columns = {"Z", "state", "which", "term", "value", "value_MHz"};
      for (int Z = range->first; Z <= range->second; ++Z) {
        auto level = detail::named(Z, render_label(st), [&] {
          return analytic_expansion(st, Z, c, which, ctx.bethe);
        });
        for (const auto& term : level.breakdown)
          t.add_row({(long long)Z, render_label(st), which_s, term.label,
                     term.value, to_MHz(term.value, c)});
      }
    } else if (f1->parsed()) {
      t.columns = {"n", "q", "A0_over_e", "radiative_over_e"};
      const int points = 200;
      const double q_lo = 0.1, q_hi = 50.0;
      for (int fig_n : {4, 8, 12}) {
        double lam = detail::named(1, std::to_string(fig_n) + "s_{1/2}", [&] {
          return lambda_lamb(fig_n, -1, 0, c.alpha, c.alpha, ctx.bethe).value;
        });
        for (int i = 0; i < points; ++i) {
          double tfrac = double(i) / double(points - 1);
          double q = q_lo * std::pow(q_hi / q_lo, tfrac);
          t.add_row({(long long)fig_n, q, 1.0 / q, std::abs(lam) / q});
        }
      }
    } else if (cp->parsed()) {
      std::vector<SplittingResult> results;
      for (int Z = range->first; Z <= range->second; ++Z) {
        if (quantity_s == "lamb" || quantity_s == "both") {
          std::string label = std::to_string(n) + "s_{1/2}-" +
                              std::to_string(n) + "p_{1/2}";
          for (LambOrder o : {LambOrder::zalpha4, LambOrder::zalpha5})
            results.push_back(detail::named(
                Z, label, [&] { return lamb_shift(Z, n, o, c, ctx.bethe); }));
        }
        if (quantity_s == "hfs" || quantity_s == "both") {
          std::string label = std::to_string(n) + "s_{1/2}";
          results.push_back(detail::named(Z, label, [&] {
            return hyperfine_splitting(Z, n, c, corrections,
                                       ctx.settings.user_delta_hyperfine);
          }));
        }
      }
      auto rows = compare(results, ctx.refs);
      t.columns = {"Z",
                   "n",
                   "quantity",
                   "order",
                   "value_MHz",
                   "reference_label",
                   "reference_MHz",
                   "reference_source",
                   "discrepancy_percent"};
      for (const auto& row : rows) {
        t.add_row({(long long)row.result.Z, (long long)row.result.n,
                   to_string(quantity_of(row.result.kind)),
                   row.result.order_label, row.result.value_MHz,
                   row.reference ? Cell(row.reference->label)
                                 : Cell(std::monostate{}),
                   row.reference ? Cell(row.reference->value_MHz)
                                 : Cell(std::monostate{}),
                   row.reference ? Cell(to_string(row.reference->source))
                                 : Cell(std::monostate{}),
                   detail::opt_cell(row.discrepancy_percent)});
      }
    }

    std::string text = emit(t, format);
    if (out_path.empty()) {
      out << text;
    } else {
      std::ofstream f(out_path);
      if (!f) throw IoError("cannot open output file: " + out_path);
      f << text;
      if (!f.good()) throw IoError("failed writing output file: " + out_path);
    }
    return 0;
  } catch (const effdirac::Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace effdirac::cli
