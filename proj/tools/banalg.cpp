// Command-line front end: build products, compute characters, multipliers
// and BSE norms of algebras stored as JSON, and run the verification harness.
//
// Exit status: 0 success, 1 verification failures, 2 unreadable or invalid
// input (I/O, parse or schema errors, bad command line), 3 any other library
// error (for instance a rejected algebra or an input outside the hypotheses
// of an operation).

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "banalg/bse.hpp"
#include "banalg/io.hpp"
#include "banalg/multipliers.hpp"
#include "banalg/verify.hpp"

namespace {

using namespace banalg;
using io::Json;

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitInput = 2;
constexpr int kExitDomain = 3;

struct Globals {
  double tol = kAlgebraicTol;
  double opt_tol = kOptimizationTol;
  std::uint64_t seed = 0;
  unsigned jobs = 1;
  std::string format = "json";
};

struct Output {
  std::string path;  // empty: stdout
};

void check_globals(const Globals& g) {
  if (!(g.tol > 0.0)) throw Error(ErrorCode::schema_error, "--tol: must be > 0");
  if (!(g.opt_tol > 0.0)) throw Error(ErrorCode::schema_error, "--opt-tol: must be > 0");
}

void emit(const Globals& g, const Output& out, const Json& json, const std::string& text) {
  const std::string body = g.format == "text" ? text : json.dump(2) + "\n";
  if (out.path.empty()) {
    std::cout << body;
  } else {
    io::write_text_file(out.path, body);
  }
}

std::string complex_text(Complex z) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g%+.10gi", z.real(), z.imag());
  return buf;
}

std::string vector_text(const CVector& v) {
  std::string s = "[";
  for (Eigen::Index i = 0; i < v.size(); ++i) s += (i ? ", " : "") + complex_text(v(i));
  return s + "]";
}

/// Either a bare algebra document or a product / group document.
io::ProductDocument load_document(const std::string& path, double tol) {
  const Json j = io::read_json_file(path);
  if (j.is_object() && j.contains("kind")) return io::product_from_json(j, tol);
  io::ProductDocument doc;
  doc.kind = "algebra";
  doc.algebra = io::algebra_from_json(j);
  return doc;
}

Algebra document_algebra(const io::ProductDocument& doc, double tol) {
  return doc.descriptor ? doc.descriptor->algebra : Algebra::create(doc.algebra, {tol, true});
}

CharacterOptions character_options(const Globals& g) {
  CharacterOptions o;
  o.tol = g.tol;
  o.seed = g.seed;
  return o;
}

BSEOptions bse_options(const Globals& g) { return {g.tol, g.opt_tol, {}}; }

Json characters_json(const std::string& name, const CharacterSet& set) {
  Json j;
  j["algebra"] = name;
  j["provenance"] = std::string(to_string(set.provenance));
  j["count"] = set.size();
  Json items = Json::array();
  for (const auto& c : set.items) items.push_back({{"values", io::vector_to_json(c.values)}, {"residual", c.residual}});
  j["characters"] = std::move(items);
  return j;
}

std::string characters_text(const std::string& name, const CharacterSet& set) {
  std::string s = name + ": " + std::to_string(set.size()) + " characters (" + std::string(to_string(set.provenance)) + ")\n";
  for (std::size_t k = 0; k < set.size(); ++k) {
    char res[32];
    std::snprintf(res, sizeof res, "%.2e", set[k].residual);
    s += "  " + std::to_string(k) + ": " + vector_text(set[k].values) + "  residual " + res + "\n";
  }
  return s;
}

// ---------------------------------------------------------------- build

int cmd_build_semidirect(const Globals& g, const std::string& b, const std::string& i, const std::string& act,
                         const Output& out) {
  const ValidationOptions v{g.tol, true};
  const ProductDescriptor desc = semidirect(
      {Algebra::create(io::load_algebra_spec(b), v), Algebra::create(io::load_algebra_spec(i), v),
       io::actions_from_json(io::read_json_file(act))},
      g.tol);
  emit(g, out, io::product_to_json(desc), "built semidirect product " + desc.algebra.name() + " of dim " +
                                                std::to_string(desc.algebra.dim()) + "\n");
  return kExitOk;
}

int cmd_build_lau(const Globals& g, const std::string& a, const std::string& b, const std::string& phi_path, bool force,
                  const Output& out) {
  const ValidationOptions v{g.tol, true};
  const Algebra alg_a = Algebra::create(io::load_algebra_spec(a), v);
  const Algebra alg_b = Algebra::create(io::load_algebra_spec(b), v);
  const Json pj = io::read_json_file(phi_path);
  const CMatrix phi = pj.is_object() ? io::morphism_from_json(pj).matrix : io::matrix_from_json(pj, "phi");
  const ProductDescriptor desc = lau_product(alg_a, alg_b, phi, {g.tol, force});
  emit(g, out, io::product_to_json(desc), "built " + std::string(to_string(desc.kind)) + " product " +
                                                desc.algebra.name() + " of dim " + std::to_string(desc.algebra.dim()) +
                                                "\n");
  return kExitOk;
}

int cmd_build_group(const Globals& g, const std::vector<int>& orders, const Output& out) {
  if (orders.empty()) throw Error(ErrorCode::schema_error, "--orders: expected a nonempty list");
  for (int o : orders) {
    if (o <= 0) throw Error(ErrorCode::schema_error, "--orders: entries must be positive");
  }
  const Algebra alg = finite_abelian_group_algebra(orders);
  emit(g, out, io::group_to_json(alg, orders), "built " + alg.name() + " of dim " + std::to_string(alg.dim()) + "\n");
  return kExitOk;
}

// ---------------------------------------------------------------- queries

int cmd_characters(const Globals& g, const std::string& path, bool closed_form, const Output& out) {
  const io::ProductDocument doc = load_document(path, g.tol);
  const Algebra alg = document_algebra(doc, g.tol);
  CharacterSet set;
  if (!closed_form) {
    set = characters_numerical(alg, character_options(g));
  } else if (doc.kind == "group") {
    set = group_characters(doc.orders);
  } else if (doc.descriptor && doc.descriptor->kind == ProductKind::semidirect) {
    set = characters_semidirect(*doc.descriptor, characters_numerical(doc.descriptor->first, character_options(g)),
                                characters_numerical(doc.descriptor->second, character_options(g)), g.tol);
  } else if (doc.descriptor) {
    set = characters_lau(*doc.descriptor, characters_numerical(doc.descriptor->first, character_options(g)),
                         characters_numerical(doc.descriptor->second, character_options(g)));
  } else {
    throw Error(ErrorCode::schema_error, "--closed-form: needs a product or group document, got a plain algebra");
  }
  emit(g, out, characters_json(alg.name(), set), characters_text(alg.name(), set));
  return kExitOk;
}

Json blocks_json(const BlockDecomposition& b) {
  return {{"t_b", io::matrix_to_json(b.t_b)},
          {"s_b", io::matrix_to_json(b.s_b)},
          {"s_i", io::matrix_to_json(b.s_i)},
          {"r_i", io::matrix_to_json(b.r_i)},
          {"membership_residuals", b.membership_residuals},
          {"relation_residuals", b.relation_residuals}};
}

int cmd_multipliers(const Globals& g, const std::string& path, bool left, const std::string& blocks_path,
                    const Output& out) {
  std::optional<ProductDescriptor> view;
  std::optional<Algebra> alg;
  if (!path.empty()) alg = document_algebra(load_document(path, g.tol), g.tol);
  if (!blocks_path.empty()) {
    const io::ProductDocument doc = load_document(blocks_path, g.tol);
    if (!doc.descriptor) throw Error(ErrorCode::schema_error, "--blocks: expected a semidirect or Lau product document");
    if (alg && !alg->same_as(doc.descriptor->algebra)) {
      throw Error(ErrorCode::algebra_mismatch, "the algebra is not the product described by --blocks");
    }
    view = doc.descriptor->kind == ProductKind::semidirect ? *doc.descriptor : lau_as_semidirect(*doc.descriptor);
    alg = view->algebra;
  }
  if (!alg) throw Error(ErrorCode::schema_error, "multipliers: give an algebra file or --blocks");

  const bool want_left = left || view.has_value();
  const MultiplierBasis basis = want_left ? left_multiplier_space(*alg) : multiplier_space(*alg);
  Json j;
  j["algebra"] = alg->name();
  j["kind"] = std::string(to_string(basis.kind));
  j["dim"] = basis.dim();
  j["max_residual"] = basis.max_residual;
  Json mats = Json::array();
  for (const auto& t : basis.basis) mats.push_back(io::matrix_to_json(t));
  j["basis"] = std::move(mats);
  std::string text = alg->name() + ": dim " + std::string(to_string(basis.kind)) + " = " + std::to_string(basis.dim()) + "\n";
  if (view) {
    Json dec = Json::array();
    double worst = 0.0;
    for (const auto& t : basis.basis) {
      const BlockDecomposition b = decompose_left_multiplier(t, *view, g.tol);
      worst = std::max(worst, b.max_relation_residual());
      dec.push_back(blocks_json(b));
    }
    const std::size_t space = block_space(*view).size();
    j["blocks"] = {{"block_space_dim", space}, {"max_relation_residual", worst}, {"decompositions", std::move(dec)}};
    char res[32];
    std::snprintf(res, sizeof res, "%.2e", worst);
    text += "block space dim " + std::to_string(space) + ", max relation residual " + res + "\n";
  }
  emit(g, out, j, text);
  return kExitOk;
}

int cmd_bse_norm(const Globals& g, const std::string& path, const std::string& sigma_path, bool dual,
                 const Output& out) {
  const Algebra alg = document_algebra(load_document(path, g.tol), g.tol);
  const CharacterSet chars = characters_numerical(alg, character_options(g));
  const CVector sigma = io::sigma_from_json(io::read_json_file(sigma_path));
  if (sigma.size() != Eigen::Index(chars.size())) {
    throw Error(ErrorCode::schema_error, "values: expected " + std::to_string(chars.size()) +
                                             " entries (one per character), got " + std::to_string(sigma.size()));
  }
  Json j;
  j["algebra"] = alg.name();
  std::string text;
  if (dual) {
    const BSEDual d = bse_norm_dual(sigma, chars, alg, bse_options(g));
    j["dual_value"] = d.value;
    j["feasibility"] = d.feasibility;
    j["c"] = io::vector_to_json(d.c);
    text = "dual BSE bound " + std::to_string(d.value) + "\n";
  } else {
    const BSEFunction f = bse_norm_primal(sigma, chars, alg, bse_options(g));
    j["bse_norm"] = f.bse_norm;
    j["dual_value"] = f.dual_value;
    j["interpolation_residual"] = f.interpolation_residual;
    j["unique_minimizer"] = f.unique_minimizer;
    j["semisimplicity_warning"] = f.semisimplicity_warning;
    j["minimizer"] = io::vector_to_json(f.minimizer);
    j["dual_certificate"] = io::vector_to_json(f.dual_certificate);
    text = "BSE norm " + std::to_string(f.bse_norm) + " (certified lower bound " + std::to_string(f.dual_value) + ")" +
           (f.semisimplicity_warning ? ", SEMISIMPLICITY_WARNING" : "") + "\n";
  }
  emit(g, out, j, text);
  return kExitOk;
}

int cmd_check_bse(const Globals& g, const std::string& path, const Output& out) {
  const Algebra alg = document_algebra(load_document(path, g.tol), g.tol);
  const CharacterSet chars = characters_numerical(alg, character_options(g));
  const BSEVerdict v = check_bse_property(alg, chars, g.tol);
  Json j;
  j["algebra"] = alg.name();
  j["bse"] = v.bse;
  j["semisimple"] = v.semisimple;
  j["characters"] = v.characters;
  j["multiplier_dim"] = v.multiplier_dim;
  j["hat_dim"] = v.hat_dim;
  j["c_bse_dim"] = v.c_bse_dim;
  j["hat_in_cbse"] = v.hat_in_cbse;
  j["cbse_in_hat"] = v.cbse_in_hat;
  j["hat_consistency"] = v.hat_consistency;
  if (v.witness) j["witness"] = io::vector_to_json(*v.witness);
  if (!v.semisimple) j["note"] = "outside hypotheses: not semisimple";
  emit(g, out, j,
       alg.name() + ": " + (v.bse ? "BSE" : "not BSE") + (v.semisimple ? "" : " (outside hypotheses: not semisimple)") +
           ", dim M " + std::to_string(v.multiplier_dim) + ", characters " + std::to_string(v.characters) + "\n");
  return kExitOk;
}

struct VerifyArgs {
  std::string product;
  std::optional<std::string> theorem;
  std::vector<std::string> families;
  std::size_t count = 10;
  std::size_t max_dim = fixtures::kDefaultMaxDim;
  std::size_t sigma_samples = 12;
  std::size_t theta_samples = 100;
};

int cmd_verify(const Globals& g, const VerifyArgs& a, const Output& out) {
  verify::RunConfig cfg;
  cfg.tol = g.tol;
  cfg.opt_tol = g.opt_tol;
  cfg.seed = g.seed;
  cfg.jobs = g.jobs;
  cfg.count = a.count;
  cfg.max_dim = a.max_dim;
  cfg.sigma_samples = a.sigma_samples;
  cfg.theta_samples = a.theta_samples;
  cfg.theorem = a.theorem;
  if (!a.families.empty()) {
    cfg.families.clear();
    for (const auto& name : a.families) {
      const auto f = fixtures::family_from_string(name);
      if (!f) throw Error(ErrorCode::schema_error, "--family: unknown family '" + name + "'");
      cfg.families.push_back(*f);
    }
  }
  verify::validate_config(cfg);

  verify::Report report;
  if (!a.product.empty()) {
    const io::ProductDocument doc = load_document(a.product, g.tol);
    const fixtures::Fixture fx = verify::fixture_from_document(doc, document_algebra(doc, g.tol).name());
    report = verify::single_report(verify::check_fixture(fx, 0, cfg), cfg);
  } else {
    report = verify::run_verify(cfg);
  }
  const bool color = std::getenv("BANALG_NO_COLOR") == nullptr;
  emit(g, out, verify::report_to_json(report), verify::render_text(report, color));
  return report.ok() ? kExitOk : kExitFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite-dimensional commutative Banach algebras: products, characters, multipliers, BSE norms"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--tol", g.tol, "algebraic tolerance")->capture_default_str();
  app.add_option("--opt-tol", g.opt_tol, "relative tolerance for optimization results")->capture_default_str();
  app.add_option("--seed", g.seed, "seed for every random choice")->capture_default_str();
  app.add_option("--jobs", g.jobs, "worker threads for verify")->capture_default_str()->check(CLI::PositiveNumber);
  app.add_option("--format", g.format, "output format")->capture_default_str()->check(CLI::IsMember({"json", "text"}));

  Output out;
  auto add_output = [&](CLI::App* sub) { sub->add_option("-o,--output", out.path, "write to a file instead of stdout"); };

  std::function<int()> action;

  CLI::App* build = app.add_subcommand("build", "assemble a product algebra");
  build->require_subcommand(1);
  std::string b_path, i_path, act_path, a_path, phi_path;
  bool force = false;
  CLI::App* semi = build->add_subcommand("semidirect", "semidirect product B (+) I");
  semi->add_option("--b", b_path, "subalgebra B")->required();
  semi->add_option("--i", i_path, "ideal I")->required();
  semi->add_option("--actions", act_path, "module action tensors")->required();
  add_output(semi);
  semi->callback([&] { action = [&] { return cmd_build_semidirect(g, b_path, i_path, act_path, out); }; });

  CLI::App* lau = build->add_subcommand("lau", "Lau product A x_phi B");
  lau->add_option("--a", a_path, "algebra A")->required();
  lau->add_option("--b", b_path, "algebra B")->required();
  lau->add_option("--phi", phi_path, "homomorphism B -> A (morphism document or matrix)")->required();
  lau->add_flag("--force", force, "accept a non-contractive phi");
  add_output(lau);
  lau->callback([&] { action = [&] { return cmd_build_lau(g, a_path, b_path, phi_path, force, out); }; });

  std::vector<int> orders;
  CLI::App* group = build->add_subcommand("group", "group algebra of Z_n1 x ... x Z_nr");
  group->add_option("--orders", orders, "cyclic orders, comma separated")->required()->delimiter(',');
  add_output(group);
  group->callback([&] { action = [&] { return cmd_build_group(g, orders, out); }; });

  std::string alg_path;
  bool closed_form = false;
  CLI::App* chars = app.add_subcommand("characters", "list the characters of an algebra");
  chars->add_option("algebra", alg_path, "algebra or product document")->required();
  chars->add_flag("--closed-form", closed_form, "use the closed-form description of a product or group");
  add_output(chars);
  chars->callback([&] { action = [&] { return cmd_characters(g, alg_path, closed_form, out); }; });

  bool left = false;
  std::string blocks_path;
  CLI::App* mult = app.add_subcommand("multipliers", "multiplier space of an algebra");
  mult->add_option("algebra", alg_path, "algebra or product document");
  mult->add_flag("--left", left, "left multipliers instead of multipliers");
  mult->add_option("--blocks", blocks_path, "product document; also decompose into the four blocks");
  add_output(mult);
  mult->callback([&] { action = [&] { return cmd_multipliers(g, alg_path, left, blocks_path, out); }; });

  std::string sigma_path;
  bool dual = false;
  CLI::App* norm = app.add_subcommand("bse-norm", "BSE norm of a function on the character list");
  norm->add_option("algebra", alg_path, "algebra or product document")->required();
  norm->add_option("--sigma", sigma_path, "function values, ordered as by `characters`")->required();
  norm->add_flag("--dual", dual, "compute the dual supremum instead");
  add_output(norm);
  norm->callback([&] { action = [&] { return cmd_bse_norm(g, alg_path, sigma_path, dual, out); }; });

  CLI::App* check = app.add_subcommand("check-bse", "decide the BSE property");
  check->add_option("algebra", alg_path, "algebra or product document")->required();
  add_output(check);
  check->callback([&] { action = [&] { return cmd_check_bse(g, alg_path, out); }; });

  VerifyArgs va;
  std::string theorem;
  CLI::App* ver = app.add_subcommand("verify", "run the property checks on generated fixtures or on one product");
  ver->add_option("product", va.product, "product document to check instead of generated fixtures");
  ver->add_option("--theorem", theorem, "restrict to one theorem")
      ->check(CLI::IsMember({"lemma21", "prop24", "lemma41", "theta", "tim2", "lau-bse", "sub"}));
  ver->add_option("--family", va.families, "fixture families (diagonal, group, lau, semidirect, radical)")->delimiter(',');
  ver->add_option("--count", va.count, "fixtures per family")->capture_default_str();
  ver->add_option("--max-dim", va.max_dim, "largest product dimension (at most 16)")->capture_default_str();
  ver->add_option("--sigma-samples", va.sigma_samples, "random functions per fixture")->capture_default_str();
  ver->add_option("--theta-samples", va.theta_samples, "(tau, rho) pairs per Lau fixture")->capture_default_str();
  add_output(ver);
  ver->callback([&] {
    if (!theorem.empty()) va.theorem = theorem;
    action = [&] { return cmd_verify(g, va, out); };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    check_globals(g);
    return action ? action() : kExitInput;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    const ErrorCode c = e.code();
    const bool input = c == ErrorCode::parse_error || c == ErrorCode::schema_error || c == ErrorCode::io_error;
    return input ? kExitInput : kExitDomain;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDomain;
  }
}
