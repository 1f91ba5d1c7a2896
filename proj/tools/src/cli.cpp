#include "lamod/cli.hpp"

#include <cstdlib>
#include <ostream>
#include <sstream>
#include <unordered_set>

#include <CLI11.hpp>
#include <json.hpp>

namespace lamod::cli {

using nlohmann::json;

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\n\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\n\r");
  return s.substr(a, b - a + 1);
}

i64 parse_int(const std::string& s) {
  std::size_t pos = 0;
  i64 v = std::stoll(s, &pos);
  if (pos != s.size()) throw std::invalid_argument("not an integer: '" + s + "'");
  return v;
}

json module_json(const LambdaModule& m) {
  json layers = json::array();
  for (const Layer& l : m.shape.layers()) layers.push_back({l.exponent, l.multiplicity});
  json matrix = json::array();
  int n = m.shape.rank();
  for (int r = 0; r < n; ++r) {
    json row = json::array();
    for (int c = 0; c < n; ++c) row.push_back(m.action.at(r, c));
    matrix.push_back(row);
  }
  return json{{"p", m.shape.p()}, {"shape", m.shape.str()}, {"layers", layers}, {"matrix", matrix}};
}

json params_json(const Params& params) {
  json out = json::object();
  for (const auto& [k, v] : params) out[k] = v;
  return out;
}

std::string params_csv(const Params& params) {
  std::string out;
  for (const auto& [k, v] : params) {
    if (!out.empty()) out += ";";
    out += k + "=" + v;
  }
  return out;
}

std::string matrix_csv(const StructuredMatrix& m) {
  std::string out;
  int n = m.shape().rank();
  for (int r = 0; r < n; ++r) {
    if (r) out += "; ";
    for (int c = 0; c < n; ++c) {
      if (c) out += " ";
      out += std::to_string(m.at(r, c));
    }
  }
  return out;
}

std::string envelope(const std::string& command, json payload) {
  json doc{{"schema_version", kSchemaVersion}, {"command", command}, {"payload", std::move(payload)}};
  return doc.dump(2) + "\n";
}

void require_prime(i64 p) {
  if (!is_prime(p)) throw std::invalid_argument("p must be prime (got " + std::to_string(p) + ")");
}

void require_n(int n) {
  if (n < 0 || n > 4) throw std::invalid_argument("n must be between 0 and 4");
}

}  // namespace

LambdaModule parse_module_spec(const std::string& spec) {
  std::string body = trim(spec);
  if (body == "0") return LambdaModule::zero(2);

  std::vector<std::string> parts = split(body, ';');
  if (parts.empty()) throw std::invalid_argument("module spec: empty");
  std::string shape_part = trim(parts[0]);

  // Shape: factors "p^e^n" joined by 'x'.
  i64 p = 0;
  std::vector<Layer> layers;
  for (const std::string& tok_raw : split(shape_part, 'x')) {
    std::string tok = trim(tok_raw);
    std::vector<std::string> bits = split(tok, '^');
    if (bits.size() != 3)
      throw std::invalid_argument("module spec: factor '" + tok + "' is not of the form p^e^n");
    i64 fp = parse_int(trim(bits[0]));
    i64 fe = parse_int(trim(bits[1]));
    i64 fn = parse_int(trim(bits[2]));
    if (p == 0) p = fp;
    if (fp != p) throw std::invalid_argument("module spec: mixed primes in one shape");
    layers.push_back({static_cast<int>(fe), static_cast<int>(fn)});
  }
  GroupShape shape = GroupShape::make(p, std::move(layers));

  int n = shape.rank();
  if (static_cast<int>(parts.size()) != n + 1)
    throw std::invalid_argument("module spec: expected " + std::to_string(n) + " matrix rows");
  std::vector<i64> entries;
  for (int r = 0; r < n; ++r) {
    std::vector<std::string> cells = split(parts[r + 1], ',');
    if (static_cast<int>(cells.size()) != n)
      throw std::invalid_argument("module spec: row " + std::to_string(r + 1) + " needs " +
                                  std::to_string(n) + " entries");
    for (const std::string& c : cells) entries.push_back(parse_int(trim(c)));
  }
  return LambdaModule::make(shape, StructuredMatrix::reduced(shape, std::move(entries)));
}

i64 budget_from_env() {
  const char* v = std::getenv("LAMBDA_CLASSIFY_BUDGET");
  if (!v) return kDefaultUnitBudget;
  i64 parsed = parse_int(v);
  if (parsed <= 0) throw std::invalid_argument("LAMBDA_CLASSIFY_BUDGET must be positive");
  return parsed;
}

std::string render_classify(i64 p, int n, const std::string& format) {
  require_prime(p);
  require_n(n);
  ClassificationReport rep = enumerate_modules(p, n);

  if (format == "csv") {
    std::string out = "p,n,shape,family,params,matrix,image_order\n";
    for (const TableRow& row : rep.rows) {
      out += std::to_string(p) + "," + std::to_string(n) + "," + row.shape.str() + "," +
             row.family + "," + params_csv(row.params) + "," + matrix_csv(row.module.action) +
             "," + std::to_string(checked_pow(p, row.image_exp)) + "\n";
    }
    return out;
  }
  if (format != "json") throw std::invalid_argument("unknown format '" + format + "'");

  json rows = json::array();
  for (const TableRow& row : rep.rows) {
    json matrix = json::array();
    int rk = row.shape.rank();
    for (int r = 0; r < rk; ++r) {
      json jr = json::array();
      for (int c = 0; c < rk; ++c) jr.push_back(row.module.action.at(r, c));
      matrix.push_back(jr);
    }
    rows.push_back(json{{"shape", row.shape.str()},
                        {"family", row.family},
                        {"params", params_json(row.params)},
                        {"matrix", matrix},
                        {"image_order", checked_pow(p, row.image_exp)}});
  }
  json by_shape = json::object();
  for (const auto& [name, count] : rep.totals_by_shape) by_shape[name] = count;
  json by_image = json::object();
  for (const auto& [exp, count] : rep.totals_by_image_exp)
    by_image[std::to_string(checked_pow(p, exp))] = count;
  json payload{{"p", p},
               {"n", n},
               {"rows", rows},
               {"totals",
                json{{"grand_total", rep.grand_total},
                     {"by_shape", by_shape},
                     {"by_image_order", by_image}}},
               {"closed_form", count_modules(p, n)}};
  return envelope("classify", std::move(payload));
}

std::string render_quandles(i64 p, int n, bool connected_only, bool with_tables,
                            const std::string& format) {
  require_prime(p);
  require_n(n);
  std::vector<QuandleEntry> entries = enumerate_quandles(p, n);
  i64 listed = 0;

  if (format == "csv") {
    std::string out = "p,n,order,connected,image_shape,image_family,image_params\n";
    for (const QuandleEntry& e : entries) {
      if (connected_only && !e.connected) continue;
      ++listed;
      out += std::to_string(p) + "," + std::to_string(n) + "," + std::to_string(e.table.size) +
             "," + (e.connected ? "true" : "false") + "," + e.image.shape.str() + "," +
             e.image_family + "," + params_csv(e.image_params) + "\n";
    }
    return out;
  }
  if (format != "json") throw std::invalid_argument("unknown format '" + format + "'");

  json list = json::array();
  for (const QuandleEntry& e : entries) {
    if (connected_only && !e.connected) continue;
    ++listed;
    json item{{"order", e.table.size},
              {"connected", e.connected},
              {"origin", module_json(e.origin)},
              {"image", module_json(e.image)},
              {"image_family", e.image_family},
              {"image_params", params_json(e.image_params)}};
    if (with_tables) {
      json tbl = json::array();
      for (int x = 0; x < e.table.size; ++x) {
        json row = json::array();
        for (int y = 0; y < e.table.size; ++y) row.push_back(e.table.at(x, y));
        tbl.push_back(row);
      }
      item["table"] = tbl;
    }
    list.push_back(std::move(item));
  }
  json payload{{"p", p},
               {"n", n},
               {"connected_only", connected_only},
               {"count", listed},
               {"closed_form", connected_only ? count_connected(p, n) : count_quandles(p, n)},
               {"quandles", list}};
  return envelope("quandles", std::move(payload));
}

std::string render_verify(const VerificationReport& report) {
  json checks = json::array();
  for (const VerificationCheck& c : report.checks) {
    const char* st = c.status == CheckStatus::pass     ? "pass"
                     : c.status == CheckStatus::fail   ? "fail"
                                                       : "skipped";
    checks.push_back(json{{"name", c.name}, {"status", st}, {"detail", c.detail}});
  }
  json payload{{"p", report.p},
               {"n", report.n},
               {"checks", checks},
               {"passed", !report.any_failed()},
               {"partial", report.any_skipped()}};
  return envelope("verify", std::move(payload));
}

std::string render_extend(const LambdaModule& input, int target_exponent) {
  i64 p = input.shape.p();
  int i_exp = input.shape.total_exponent();
  i64 img = image_order(input);
  int j_exp = img == 1 ? 0 : valuation(img, p);
  int minimal = 2 * i_exp - j_exp;
  if (target_exponent < minimal)
    throw std::invalid_argument("extend: target exponent " + std::to_string(target_exponent) +
                                " violates the bound 2i - j = " + std::to_string(minimal));

  ExtensionResult ext = extend(input);
  LambdaModule extended = ext.extended;
  std::vector<GroupElement> inclusion = ext.inclusion;
  int pad = target_exponent - minimal;
  if (pad > 0) {
    std::vector<std::pair<int, int>> origin;
    extended = direct_sum(p, {extended, LambdaModule::cyclic(p, pad, 1)}, &origin);
    std::vector<GroupElement> lifted;
    for (const GroupElement& e : inclusion) {
      std::vector<i64> c(extended.shape.rank(), 0);
      for (int idx = 0; idx < extended.shape.rank(); ++idx)
        if (origin[idx].first == 0) c[idx] = e.coord(origin[idx].second);
      lifted.emplace_back(extended.shape, std::move(c));
    }
    inclusion = std::move(lifted);
  }

  // Verify that (1-t) of the final module is exactly the embedded input.
  StructuredMatrix one_minus_t = StructuredMatrix::identity(extended.shape).sub(extended.action);
  std::unordered_set<i64> image_set, embedded_set;
  for (i64 i = 0; i < extended.order(); ++i)
    image_set.insert(one_minus_t.apply(GroupElement::from_index(extended.shape, i)).index());
  for (i64 i = 0; i < input.order(); ++i) {
    GroupElement x = GroupElement::from_index(input.shape, i);
    GroupElement img_x = GroupElement::zero(extended.shape);
    for (std::size_t k = 0; k < inclusion.size(); ++k)
      img_x = img_x.add(inclusion[k].scaled(x.coord(static_cast<int>(k))));
    embedded_set.insert(img_x.index());
  }
  bool image_ok = image_set == embedded_set;
  if (!image_ok) throw std::logic_error("extend: verification failed");

  json incl = json::array();
  for (const GroupElement& e : inclusion) {
    json coords = json::array();
    for (i64 c : e.coords()) coords.push_back(c);
    incl.push_back(coords);
  }
  json steps = json::array();
  for (const ExtensionStep& s : ext.steps)
    steps.push_back(json{{"grown_coord", s.grown_coord},
                         {"module_growth", s.module_growth},
                         {"image_growth", s.image_growth},
                         {"rank", s.rank}});
  json payload{{"input", module_json(input)},
               {"extended", module_json(extended)},
               {"inclusion", incl},
               {"steps", steps},
               {"verification",
                json{{"image_equals_input", image_ok},
                     {"index", extended.order() / input.order()}}}};
  return envelope("extend", std::move(payload));
}

std::string render_isomorphic_modules(const LambdaModule& a, const LambdaModule& b, i64 budget,
                                      bool* result) {
  bool iso = lambda_isomorphic(a, b, budget);
  json witness;  // null unless the oracle can exhibit a conjugator
  if (iso && a.shape == b.shape && !a.shape.is_zero() &&
      unit_group_order(a.shape) <= budget) {
    if (auto w = are_conjugate_oracle(a.action, b.action, budget)) {
      json rows = json::array();
      int n = a.shape.rank();
      for (int r = 0; r < n; ++r) {
        json row = json::array();
        for (int c = 0; c < n; ++c) row.push_back(w->at(r, c));
        rows.push_back(row);
      }
      witness = json{{"conjugator", rows}};
    }
  }
  *result = iso;
  json payload{{"kind", "modules"},
               {"a", module_json(a)},
               {"b", module_json(b)},
               {"result", iso},
               {"witness", witness}};
  return envelope("isomorphic", std::move(payload));
}

std::string render_isomorphic_quandles(const LambdaModule& a, const LambdaModule& b, i64 budget,
                                       bool* result) {
  bool iso = quandles_isomorphic(a, b, budget);
  json witness;
  if (iso && a.order() <= 16) {
    auto bij = quandle_isomorphism(alexander_quandle(a), alexander_quandle(b));
    if (bij) witness = json{{"bijection", *bij}};
  }
  *result = iso;
  json payload{{"kind", "quandles"},
               {"a", module_json(a)},
               {"b", module_json(b)},
               {"result", iso},
               {"witness", witness}};
  return envelope("isomorphic", std::move(payload));
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Classification of finite modules over Z[t,t^-1] and Alexander quandles"};
  app.require_subcommand(1);
  int seed = 0;
  app.add_option("--seed", seed,
                 "RNG seed reserved for property-test shuffling; deterministic output is unaffected");

  i64 p = 0;
  int n = 0;
  std::string format = "json";
  bool connected = false, with_table = false;
  std::string spec_a, spec_b;
  int target_exponent = -1;
  bool want_modules = false, want_quandles = false;

  CLI::App* classify = app.add_subcommand("classify", "Canonical modules of order p^n");
  classify->add_option("--p", p, "prime")->required();
  classify->add_option("--n", n, "order exponent, 0..4")->required();
  classify->add_option("--format", format, "json or csv");

  CLI::App* quandles = app.add_subcommand("quandles", "Alexander quandles of order p^n");
  quandles->add_option("--p", p, "prime")->required();
  quandles->add_option("--n", n, "order exponent, 0..4")->required();
  quandles->add_option("--format", format, "json or csv");
  quandles->add_flag("--connected", connected, "list connected quandles only");
  quandles->add_flag("--table", with_table, "include full operation tables");

  CLI::App* verify = app.add_subcommand("verify", "Verify the classification against the oracle");
  verify->add_option("--p", p, "prime")->required();
  verify->add_option("--n", n, "order exponent, 0..4")->required();

  CLI::App* extend_cmd = app.add_subcommand("extend", "Extend a module N to M with (1-t)M = N");
  extend_cmd->add_option("--module", spec_a, "module spec")->required();
  extend_cmd->add_option("--target-exponent", target_exponent, "order exponent of the extension")
      ->required();

  CLI::App* iso = app.add_subcommand("isomorphic", "Decide module or quandle isomorphism");
  iso->add_flag("--modules", want_modules, "compare as modules");
  iso->add_flag("--quandles", want_quandles, "compare as Alexander quandles");
  iso->add_option("spec-a", spec_a, "first module spec")->required();
  iso->add_option("spec-b", spec_b, "second module spec")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kExitOk;
    }
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  (void)seed;

  try {
    i64 budget = budget_from_env();
    if (classify->parsed()) {
      out << render_classify(p, n, format);
      return kExitOk;
    }
    if (quandles->parsed()) {
      out << render_quandles(p, n, connected, with_table, format);
      return kExitOk;
    }
    if (verify->parsed()) {
      require_prime(p);
      require_n(n);
      VerificationReport rep = verify_table(p, n, budget);
      out << render_verify(rep);
      return rep.any_failed() ? kExitVerifyFailed : kExitOk;
    }
    if (extend_cmd->parsed()) {
      LambdaModule m = parse_module_spec(spec_a);
      out << render_extend(m, target_exponent);
      return kExitOk;
    }
    if (iso->parsed()) {
      if (want_modules == want_quandles)
        throw std::invalid_argument("isomorphic: pass exactly one of --modules / --quandles");
      LambdaModule a = parse_module_spec(spec_a);
      LambdaModule b = parse_module_spec(spec_b);
      bool result = false;
      out << (want_modules ? render_isomorphic_modules(a, b, budget, &result)
                           : render_isomorphic_quandles(a, b, budget, &result));
      return result ? kExitOk : kExitFalse;
    }
  } catch (const BudgetExceeded& e) {
    err << "budget exceeded: " << e.what() << "\n";
    return kExitBudget;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::overflow_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitVerifyFailed;
  }
  return kExitUsage;
}

}  // namespace lamod::cli
