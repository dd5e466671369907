// Command-line front end: presentation/form parsing, dispatch to the
// library operations, and machine-readable JSON reports.
//
// Exit codes: 0 = all checks passed, 1 = a check failed, 2 = usage or
// parse error. All truncation bounds are mandatory flags: soundness of a
// truncated computation is a conscious choice, never a silent default.
// Set DGSW_PRETTY=1 to pretty-print reports (formatting only).

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "dgsw/darboux.hpp"
#include "dgsw/parse.hpp"

using nlohmann::json;
using namespace dgsw;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct CheckFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const json& report, const std::string& out_path) {
  bool pretty = false;
  if (const char* env = std::getenv("DGSW_PRETTY"))
    pretty = std::string(env) != "0" && std::string(env) != "";
  std::string text = pretty ? report.dump(2) : report.dump();
  text += "\n";
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path);
    if (!out) throw UsageError("cannot write file: " + out_path);
    out << text;
  }
}

// --- combined file format: a presentation followed by named blocks ---
//
//   field Q;  gen NAME : DEG;  D NAME = EXPR;      (the base algebra)
//   module NAME { basis NAME : DEG; D NAME = LINCOMB; }
//   pairing { NAME = LINCOMB; }                    (columns of phi)
//   lagrangian { basis NAME : DEG; D NAME = LINCOMB; }
//   inclusion { NAME = LINCOMB; }                  (columns over the sub)
//
// LINCOMB is a sum of [EXPR *] BASISNAME terms separated by top-level +.

struct Block {
  std::string kind;                       // module / pairing / ...
  std::string name;                       // optional label
  std::vector<std::string> lines;         // ;-terminated statements
};

struct CombinedFile {
  CdgaPtr alg;
  std::vector<Block> blocks;
};

CombinedFile parse_combined(const std::string& text) {
  // Split off the leading presentation: everything before the first
  // block keyword at the start of a line.
  static const std::vector<std::string> kinds = {"module", "pairing",
                                                 "lagrangian", "inclusion"};
  std::size_t cut = text.size();
  std::string first_kind;
  for (auto& k : kinds) {
    std::size_t pos = 0;
    while ((pos = text.find(k, pos)) != std::string::npos) {
      bool at_line_start =
          pos == 0 || text[pos - 1] == '\n' || text[pos - 1] == '\r';
      if (at_line_start && pos < cut) cut = pos;
      if (at_line_start) break;
      ++pos;
    }
  }
  CombinedFile out;
  out.alg = parse_presentation(text.substr(0, cut));

  std::size_t i = cut;
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i])))
      ++i;
  };
  while (true) {
    skip_ws();
    if (i >= text.size()) break;
    std::size_t ks = i;
    while (i < text.size() &&
           (std::isalnum(static_cast<unsigned char>(text[i])) ||
            text[i] == '_'))
      ++i;
    Block b;
    b.kind = text.substr(ks, i - ks);
    bool known = false;
    for (auto& k : kinds) known = known || k == b.kind;
    if (!known) throw UsageError("unknown block kind: " + b.kind);
    skip_ws();
    if (i < text.size() && text[i] != '{') {
      std::size_t ns = i;
      while (i < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[i])) ||
              text[i] == '_'))
        ++i;
      b.name = text.substr(ns, i - ns);
      skip_ws();
    }
    if (i >= text.size() || text[i] != '{')
      throw UsageError("expected '{' after block header " + b.kind);
    ++i;
    std::string stmt;
    while (i < text.size() && text[i] != '}') {
      if (text[i] == ';') {
        // Trim and keep nonempty statements.
        std::size_t a = stmt.find_first_not_of(" \t\r\n");
        if (a != std::string::npos) {
          std::size_t z = stmt.find_last_not_of(" \t\r\n");
          b.lines.push_back(stmt.substr(a, z - a + 1));
        }
        stmt.clear();
      } else {
        stmt += text[i];
      }
      ++i;
    }
    if (i >= text.size()) throw UsageError("unterminated block " + b.kind);
    ++i;  // consume '}'
    out.blocks.push_back(std::move(b));
  }
  return out;
}

const Block* find_block(const CombinedFile& f, const std::string& kind) {
  for (auto& b : f.blocks)
    if (b.kind == kind) return &b;
  return nullptr;
}

// Linear combination of basis elements with polynomial coefficients:
// terms separated by top-level '+', each term [EXPR *] BASISNAME.
std::vector<Poly> parse_lincomb(const std::string& text,
                                const DgModulePtr& mod) {
  std::vector<Poly> coef(static_cast<std::size_t>(mod->rank()),
                         Poly(mod->alg()));
  std::string t = text;
  {
    std::size_t a = t.find_first_not_of(" \t\r\n");
    if (a == std::string::npos || t.substr(a) == "0") return coef;
  }
  std::vector<std::string> terms;
  int depth = 0;
  std::string cur;
  for (char c : t) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == '+' && depth == 0) {
      terms.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  terms.push_back(cur);
  for (auto& term : terms) {
    // The basis name is the token after the last top-level '*'.
    int d2 = 0;
    std::size_t split = std::string::npos;
    for (std::size_t k = 0; k < term.size(); ++k) {
      if (term[k] == '(') ++d2;
      if (term[k] == ')') --d2;
      if (term[k] == '*' && d2 == 0) split = k;
    }
    std::string cpart =
        split == std::string::npos ? "1" : term.substr(0, split);
    std::string npart =
        split == std::string::npos ? term : term.substr(split + 1);
    std::size_t a = npart.find_first_not_of(" \t\r\n");
    std::size_t z = npart.find_last_not_of(" \t\r\n");
    if (a == std::string::npos) throw UsageError("empty term in: " + text);
    std::string name = npart.substr(a, z - a + 1);
    int idx = mod->find(name);
    if (idx < 0) {
      // The whole term may be a bare coefficient on a rank-1 module.
      throw UsageError("unknown basis element '" + name + "' in: " + text);
    }
    coef[static_cast<std::size_t>(idx)] += parse_poly(cpart, mod->alg());
  }
  return coef;
}

// module { basis NAME : DEG; D NAME = LINCOMB; } over a given algebra.
DgModulePtr parse_module_block(const Block& b, const CdgaPtr& alg) {
  std::vector<BasisElement> basis;
  std::vector<std::pair<std::string, std::string>> diffs;
  for (auto& line : b.lines) {
    std::istringstream ss(line);
    std::string head;
    ss >> head;
    if (head == "basis") {
      std::string name, colon;
      int deg;
      ss >> name >> colon >> deg;
      if (colon != ":") throw UsageError("expected ':' in basis line: " + line);
      basis.push_back({name, deg, std::nullopt});
    } else if (head == "D") {
      std::string name, eq;
      ss >> name >> eq;
      if (eq != "=") throw UsageError("expected '=' in D line: " + line);
      std::string rest;
      std::getline(ss, rest);
      diffs.emplace_back(name, rest);
    } else {
      throw UsageError("unexpected statement in module block: " + line);
    }
  }
  auto mod = DgModule::make(alg, std::move(basis));
  for (auto& [name, rhs] : diffs) {
    int j = mod->find(name);
    if (j < 0) throw UsageError("D for unknown basis element " + name);
    auto col = parse_lincomb(rhs, mod);
    for (int i = 0; i < mod->rank(); ++i) mod->set_diff(i, j, col[i]);
  }
  return mod;
}

// pairing { NAME = LINCOMB; }: column for the dagger basis element dual
// to NAME, expressed in the module basis.
DgMap parse_pairing_block(const Block& b, const DgModulePtr& mod,
                          const DualityContext& ctx) {
  DgMap phi(dagger(mod, ctx), mod, 0);
  for (auto& line : b.lines) {
    std::istringstream ss(line);
    std::string name, eq;
    ss >> name >> eq;
    if (eq != "=") throw UsageError("expected '=' in pairing line: " + line);
    std::string rest;
    std::getline(ss, rest);
    int j = mod->find(name);
    if (j < 0) throw UsageError("pairing column for unknown element " + name);
    auto col = parse_lincomb(rest, mod);
    for (int i = 0; i < mod->rank(); ++i) phi.set_entry(i, j, col[i]);
  }
  return phi;
}

// inclusion { NAME = LINCOMB; }: column for sub basis element NAME in
// the ambient module basis.
DgMap parse_inclusion_block(const Block& b, const DgModulePtr& sub,
                            const DgModulePtr& amb) {
  DgMap incl(sub, amb, 0);
  for (auto& line : b.lines) {
    std::istringstream ss(line);
    std::string name, eq;
    ss >> name >> eq;
    if (eq != "=") throw UsageError("expected '=' in inclusion line: " + line);
    std::string rest;
    std::getline(ss, rest);
    int j = sub->find(name);
    if (j < 0) throw UsageError("inclusion column for unknown element " + name);
    auto col = parse_lincomb(rest, amb);
    for (int i = 0; i < amb->rank(); ++i) incl.set_entry(i, j, col[i]);
  }
  return incl;
}

// --- form expressions: d(NAME) for one-form generators, ^ for wedge ---

Poly parse_form(const std::string& text, const OmegaModelPtr& model) {
  std::string out;
  for (std::size_t i = 0; i < text.size();) {
    if (text[i] == 'd' && i + 1 < text.size() && text[i + 1] == '(') {
      std::size_t close = text.find(')', i + 2);
      if (close == std::string::npos)
        throw UsageError("unterminated d( in form expression");
      out += "d" + text.substr(i + 2, close - i - 2);
      i = close + 1;
    } else if (text[i] == '^') {
      // '^' before a digit is a power, otherwise a wedge (product).
      std::size_t k = i + 1;
      while (k < text.size() &&
             std::isspace(static_cast<unsigned char>(text[k])))
        ++k;
      bool power = k < text.size() &&
                   std::isdigit(static_cast<unsigned char>(text[k]));
      out += power ? '^' : '*';
      ++i;
    } else {
      out += text[i];
      ++i;
    }
  }
  return parse_poly(out, model->forms.get());
}

std::string form_str(const Poly& p) { return print_poly(p); }

std::string mod_elem_str(const ModElement& e) {
  std::string s;
  for (int i = 0; i < e.mod->rank(); ++i) {
    if (e.coef[static_cast<std::size_t>(i)].is_zero()) continue;
    if (!s.empty()) s += " + ";
    s += "(" + print_poly(e.coef[static_cast<std::size_t>(i)]) + ")*" +
         e.mod->basis(i).name;
  }
  return s.empty() ? "0" : s;
}

json cohom_json(const CohomologyReport& rep) {
  json entries = json::array();
  for (auto& e : rep.entries) {
    json reps = json::array();
    for (auto& r : e.representatives) reps.push_back(mod_elem_str(r));
    entries.push_back({{"degree", e.degree},
                       {"weight", e.weight ? json(*e.weight) : json()},
                       {"dim", e.dim},
                       {"representatives", reps}});
  }
  return {{"exact", rep.exact}, {"entries", entries}};
}

// Heuristic fiber designation: the longest generator suffix whose
// degrees lie in the twisted-cotangent fiber window for the shift.
int guess_fiber_start(const CdgaPtr& A, int d) {
  int lo = (d + 2) / 2;
  int fs = A->size();
  while (fs > 0) {
    int neg = -A->gen(fs - 1).degree;
    if (neg < lo || neg > d) break;
    --fs;
  }
  return fs;
}

struct TruncFlags {
  int deg_min = 0, deg_max = 0, max_polydeg = 0;
  std::optional<int> max_weight;

  SliceSpec spec() const {
    SliceSpec s;
    s.deg_min = deg_min;
    s.deg_max = deg_max;
    s.max_polydeg = max_polydeg;
    s.max_weight = max_weight;
    return s;
  }
};

void add_trunc_flags(CLI::App* cmd, TruncFlags& t) {
  cmd->add_option("--deg-min", t.deg_min, "lower cohomological degree bound")
      ->required();
  cmd->add_option("--deg-max", t.deg_max, "upper cohomological degree bound")
      ->required();
  cmd->add_option("--max-polydeg", t.max_polydeg,
                  "polynomial degree cap for slices")
      ->required();
  cmd->add_option("--max-weight", t.max_weight,
                  "weight cap (exact slices when weight-graded)");
}

std::pair<int, int> parse_window(const std::string& w) {
  auto pos = w.find("..");
  if (pos == std::string::npos)
    throw UsageError("window must be of the form I..J");
  return {std::stoi(w.substr(0, pos)), std::stoi(w.substr(pos + 2))};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"symbolic workbench for shifted symplectic presentations"};
  app.require_subcommand(1);

  std::string in_path, out_path;
  std::string omega_expr, form_expr, op_name = "d", twist_expr, at_expr;
  std::string witness_path, window_str, tname = "t", xiname = "xi_loc";
  std::vector<std::string> xi_assign;
  TruncFlags tf;
  int dshift = 1, p_floor = 0, max_wedge = 0, fiber_start = -1;
  bool of_cotangent = false;

  auto add_common = [&](CLI::App* c) {
    c->add_option("file", in_path, "input file")->required();
    c->add_option("--output", out_path, "write the JSON report here");
  };

  auto* c_check = app.add_subcommand("check", "validate a presentation");
  add_common(c_check);

  auto* c_cot = app.add_subcommand("cotangent",
                                   "cotangent complex of a presentation");
  add_common(c_cot);

  auto* c_coh = app.add_subcommand("cohomology",
                                   "sliced cohomology of a presentation");
  add_common(c_coh);
  add_trunc_flags(c_coh, tf);
  c_coh->add_flag("--cotangent", of_cotangent,
                  "compute on the cotangent complex instead");

  auto* c_dr = app.add_subcommand("derham",
                                  "apply a de Rham operator to a form");
  add_common(c_dr);
  c_dr->add_option("--form", form_expr, "form expression")->required();
  c_dr->add_option("--op", op_name, "operator: d, D, or total")
      ->check(CLI::IsMember({"d", "D", "total"}));
  c_dr->add_option("--p-floor", p_floor, "wedge-degree floor");
  c_dr->add_option("--max-wedge", max_wedge, "wedge-degree cap")->required();

  auto* c_sc = app.add_subcommand(
      "shifted-cotangent", "shifted cotangent bundle with standard form");
  add_common(c_sc);
  c_sc->add_option("--d", dshift, "shift")->required();
  c_sc->add_option("--twist-potential", twist_expr, "potential over the base");
  add_trunc_flags(c_sc, tf);
  c_sc->add_option("--max-wedge", max_wedge, "wedge-degree cap")->required();

  auto* c_tw = app.add_subcommand(
      "twist", "twisted symmetric algebra of a module block");
  add_common(c_tw);
  c_tw->add_option("--xi", xi_assign, "twist value NAME=EXPR per basis");

  auto* c_vs = app.add_subcommand("verify-symplectic",
                                  "closed/nondegenerate/symmetric check");
  add_common(c_vs);
  c_vs->add_option("--omega", omega_expr, "two-form expression")->required();
  c_vs->add_option("--d", dshift, "shift")->required();
  add_trunc_flags(c_vs, tf);
  c_vs->add_option("--max-wedge", max_wedge, "wedge-degree cap")->required();

  auto* c_sg = app.add_subcommand(
      "surgery", "normalize a Lagrangian witness by surgery");
  add_common(c_sg);
  c_sg->add_option("--d", dshift, "shift")->required();
  add_trunc_flags(c_sg, tf);

  auto* c_ta = app.add_subcommand("tor-amplitude",
                                  "Tor amplitude of a module block");
  add_common(c_ta);

  auto* c_dx = app.add_subcommand("darboux",
                                  "Darboux normal form of a symplectic form");
  add_common(c_dx);
  c_dx->add_option("--omega", omega_expr, "two-form expression")->required();
  c_dx->add_option("--d", dshift, "shift")->required();
  c_dx->add_option("--witness", witness_path,
                   "file with lagrangian/inclusion blocks")
      ->required();
  c_dx->add_option("--max-polydeg", tf.max_polydeg, "polynomial degree cap")
      ->required();
  c_dx->add_option("--max-weight", tf.max_weight, "weight cap");
  c_dx->add_option("--max-wedge", max_wedge, "wedge-degree cap")->required();
  c_dx->add_option("--window", window_str, "degree window I..J")->required();
  c_dx->add_option("--fiber-start", fiber_start,
                   "index of the first fiber generator (default: inferred)");

  auto* c_lo = app.add_subcommand("localize",
                                  "Zariski localization at a function");
  add_common(c_lo);
  c_lo->add_option("--at", at_expr, "degree-0 element")->required();
  c_lo->add_option("--t-name", tname, "name of the inverse generator");
  c_lo->add_option("--h-name", xiname, "name of the contracting generator");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*c_check) {
      auto A = parse_presentation(read_file(in_path));
      auto rep = check_presentation(*A);
      emit({{"pass", rep.pass}, {"violations", rep.violations}}, out_path);
      return rep.pass ? 0 : 1;
    }

    if (*c_cot) {
      auto A = parse_presentation(read_file(in_path));
      auto prep = check_presentation(*A);
      if (!prep.pass) throw CheckFailure("invalid presentation");
      auto cot = cotangent_complex(A);
      json basis = json::array();
      for (int i = 0; i < cot.mod->rank(); ++i) {
        json diff = json::object();
        for (int k = 0; k < cot.mod->rank(); ++k)
          if (!cot.mod->diff(k, i).is_zero())
            diff[cot.mod->basis(k).name] = print_poly(cot.mod->diff(k, i));
        basis.push_back({{"name", cot.mod->basis(i).name},
                         {"degree", cot.mod->basis(i).degree},
                         {"differential", diff}});
      }
      auto fin = is_finitely_presented_criterion(A);
      emit({{"basis", basis},
            {"finitely_presented", fin.pass},
            {"notes", fin.notes}},
           out_path);
      return 0;
    }

    if (*c_coh) {
      auto A = parse_presentation(read_file(in_path));
      auto prep = check_presentation(*A);
      if (!prep.pass) throw CheckFailure("invalid presentation");
      CohomologyReport rep =
          of_cotangent ? cohomology(cotangent_complex(A).mod, tf.spec())
                       : cohomology(A, tf.spec());
      emit(cohom_json(rep), out_path);
      return 0;
    }

    if (*c_dr) {
      auto A = parse_presentation(read_file(in_path));
      auto model = make_omega(A);
      auto w = DeRhamElement::make(model, parse_form(form_expr, model),
                                   p_floor, max_wedge);
      DeRhamElement r = op_name == "d"   ? apply_d(w)
                        : op_name == "D" ? apply_D(w)
                                         : apply_d(w) + apply_D(w);
      json comps = json::object();
      for (int p = 0; p <= max_wedge; ++p) {
        Poly c = r.component(p);
        if (!c.is_zero()) comps[std::to_string(p)] = form_str(c);
      }
      emit({{"input", form_str(w.value)},
            {"operator", op_name},
            {"result", form_str(r.value)},
            {"components", comps},
            {"clipped", r.clipped}},
           out_path);
      return 0;
    }

    if (*c_sc) {
      auto B = parse_presentation(read_file(in_path));
      auto ctx = calibrate(dshift);
      Poly f = twist_expr.empty() ? B->zero()
                                  : parse_poly(twist_expr, B.get());
      auto sc = f.is_zero() ? shifted_cotangent(B, ctx)
                            : twisted_standard_form(B, ctx, f);
      auto rep = verify_symplectic(sc.model, sc.omega, ctx, tf.spec());
      emit({{"presentation", print_presentation(*sc.total)},
            {"liouville", form_str(sc.liouville.value)},
            {"omega", form_str(sc.omega.value)},
            {"lambdaP", ctx.lambdaP},
            {"verification",
             {{"closed", rep.closed},
              {"nondegenerate", rep.nondegenerate},
              {"symmetric", rep.symmetric},
              {"approximate", rep.approximate}}}},
           out_path);
      return rep.pass() ? 0 : 1;
    }

    if (*c_tw) {
      auto file = parse_combined(read_file(in_path));
      const Block* mb = find_block(file, "module");
      if (!mb) throw UsageError("twist needs a module block");
      auto M = parse_module_block(*mb, file.alg);
      TwistData t{file.alg, M,
                  std::vector<Poly>(static_cast<std::size_t>(M->rank()),
                                    file.alg->zero()),
                  {}};
      for (auto& a : xi_assign) {
        auto pos = a.find('=');
        if (pos == std::string::npos)
          throw UsageError("--xi expects NAME=EXPR");
        int i = M->find(a.substr(0, pos));
        if (i < 0) throw UsageError("--xi for unknown basis element");
        t.xi[static_cast<std::size_t>(i)] =
            parse_poly(a.substr(pos + 1), file.alg.get());
      }
      auto rep = t.validate();
      if (!rep.pass) {
        emit({{"pass", false}, {"violations", rep.violations}}, out_path);
        return 1;
      }
      auto A = sym_twisted(t);
      emit({{"pass", true}, {"presentation", print_presentation(*A)}},
           out_path);
      return 0;
    }

    if (*c_vs) {
      auto A = parse_presentation(read_file(in_path));
      auto ctx = calibrate(dshift);
      auto model = make_omega(A);
      auto omega = DeRhamElement::make(model, parse_form(omega_expr, model),
                                       2, max_wedge);
      auto rep = verify_symplectic(model, omega, ctx, tf.spec());
      emit({{"closed", rep.closed},
            {"nondegenerate", rep.nondegenerate},
            {"symmetric", rep.symmetric},
            {"approximate", rep.approximate},
            {"pass", rep.pass()}},
           out_path);
      return rep.pass() ? 0 : 1;
    }

    if (*c_sg) {
      auto file = parse_combined(read_file(in_path));
      const Block *mb = find_block(file, "module"),
                  *pb = find_block(file, "pairing"),
                  *lb = find_block(file, "lagrangian"),
                  *ib = find_block(file, "inclusion");
      if (!mb || !pb || !lb || !ib)
        throw UsageError(
            "surgery needs module, pairing, lagrangian and inclusion "
            "blocks");
      auto ctx = calibrate(dshift);
      auto M = parse_module_block(*mb, file.alg);
      SymmetricComplex s{M, parse_pairing_block(*pb, M, ctx), ctx};
      auto spec = tf.spec();
      auto srep = check_symmetric(s, spec);
      if (!srep.pass()) {
        emit({{"pass", false},
              {"symmetric_complex",
               {{"chain", srep.chain},
                {"quis", srep.quis},
                {"symmetric", srep.symmetric}}}},
             out_path);
        return 1;
      }
      auto sub = parse_module_block(*lb, file.alg);
      auto incl = parse_inclusion_block(*ib, sub, M);
      auto lag = complete_lagrangian(s, sub, incl, spec);
      if (!lag) throw CheckFailure("no Lagrangian certificates exist for "
                                   "the given subcomplex");
      SurgeryWitness w{hyperbolic(DgModule::make(file.alg, {}), ctx), *lag};
      auto res = surgery_to_lagrangian(s, w, spec);
      json dual = json::array();
      auto coh = cohomology(dagger(res.lag.sub, ctx), spec);
      for (auto& e : coh.entries)
        if (e.dim > 0) dual.push_back({{"degree", e.degree}, {"dim", e.dim}});
      emit({{"pass", res.normalized},
            {"iterations", res.iterations},
            {"normalized", res.normalized},
            {"sub_rank", res.lag.sub->rank()},
            {"dual_cohomology", dual},
            {"notes", res.notes}},
           out_path);
      return res.normalized ? 0 : 1;
    }

    if (*c_ta) {
      auto file = parse_combined(read_file(in_path));
      const Block* mb = find_block(file, "module");
      if (!mb) throw UsageError("tor-amplitude needs a module block");
      auto M = parse_module_block(*mb, file.alg);
      auto vrep = M->validate();
      if (!vrep.pass) {
        emit({{"pass", false}, {"violations", vrep.violations}}, out_path);
        return 1;
      }
      auto amp = tor_amplitude(*M);
      emit({{"pass", true},
            {"amplitude", amp ? json({{"min", amp->first},
                                      {"max", amp->second}})
                              : json()}},
           out_path);
      return 0;
    }

    if (*c_dx) {
      auto A = parse_presentation(read_file(in_path));
      auto ctx = calibrate(dshift);
      int fs = fiber_start >= 0 ? fiber_start : guess_fiber_start(A, dshift);
      auto model = make_omega(A, fs);
      auto [wlo, whi] = parse_window(window_str);
      tf.deg_min = wlo;
      tf.deg_max = whi;
      auto spec = tf.spec();
      OmegaSliceSpec ospec;
      ospec.base = spec;
      ospec.max_wedge = max_wedge;
      auto omega = DeRhamElement::make(model, parse_form(omega_expr, model),
                                       2, max_wedge);

      auto wf = parse_combined(read_file(witness_path));
      const Block *lb = find_block(wf, "lagrangian"),
                  *ib = find_block(wf, "inclusion");
      if (!lb || !ib)
        throw UsageError("witness file needs lagrangian and inclusion "
                         "blocks");
      auto sub = parse_module_block(*lb, A);
      DgMap phi = two_form_pairing(model, omega.component(2), ctx);
      SymmetricComplex sym{phi.dst(), phi, ctx};
      auto split = split_off_quadratic(sym, spec);
      const SymmetricComplex& target =
          split.middle ? split.metabolic : sym;
      auto incl = parse_inclusion_block(*ib, sub, target.mod);
      auto lag = complete_lagrangian(target, sub, incl, spec);
      if (!lag) throw CheckFailure("no Lagrangian certificates exist for "
                                   "the witness subcomplex");
      SurgeryWitness w{hyperbolic(DgModule::make(A, {}), ctx), *lag};

      auto res = darboux_pipeline(A, model, omega, w, ctx, spec, ospec);
      json sigma = json::object();
      json quad;
      if (res.ok) {
        for (int g = 0; g < res.normal.total->size(); ++g)
          sigma[res.normal.total->gen(g).name] = print_poly(
              res.sigma(Poly::generator(res.normal.total.get(), g)));
      }
      if (res.quadratic) {
        json qb = json::array();
        for (int i = 0; i < res.quadratic->mod->rank(); ++i)
          qb.push_back({{"name", res.quadratic->mod->basis(i).name},
                        {"degree", res.quadratic->mod->basis(i).degree}});
        quad = {{"rank", res.quadratic->mod->rank()}, {"basis", qb}};
      }
      emit({{"ok", res.ok},
            {"base", res.B ? json(print_presentation(*res.B)) : json()},
            {"f", res.B ? json(print_poly(res.f)) : json()},
            {"normal_presentation",
             res.ok ? json(print_presentation(*res.normal.total)) : json()},
            {"sigma", sigma},
            {"relative_zero", res.relative_zero},
            {"h0_surjective", res.h0_surjective},
            {"delta_zero", res.delta_zero},
            {"quadratic", quad},
            {"quadratic_flagged", res.quadratic_flagged},
            {"notes", res.notes}},
           out_path);
      return res.ok ? 0 : 1;
    }

    if (*c_lo) {
      auto A = parse_presentation(read_file(in_path));
      Poly f = parse_poly(at_expr, A.get());
      auto L = localize(*A, f, tname, xiname);
      auto rep = check_presentation(*L);
      emit({{"pass", rep.pass},
            {"presentation", print_presentation(*L)},
            {"violations", rep.violations}},
           out_path);
      return rep.pass ? 0 : 1;
    }
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const CheckFailure& e) {
    std::cerr << "check failed: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
