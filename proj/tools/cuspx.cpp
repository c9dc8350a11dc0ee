// cuspx: command-line front end for the cusp-expansion library.
//
// Exit status: 0 on success, 1 when an internal check fails or a
// computation cannot proceed, 2 when the command line or an input value
// cannot be parsed.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "cusp/io.hpp"

namespace {

  using namespace cusp;

  // Relative error given to approx: inputs when the environment variable
  // is unset.
  constexpr char const* kPrecisionEnv = "CUSPX_APPROX_RELATIVE_ERROR";

  struct ParseFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
  };
  struct CheckFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
  };

  long double approx_error() {
    char const* env = std::getenv(kPrecisionEnv);
    if (!env || !*env) {
      return -1;
    }
    try {
      std::size_t pos = 0;
      long double v   = std::stold(env, &pos);
      if (pos != std::string(env).size() || !(v > 0)) {
        throw std::invalid_argument("");
      }
      return v;
    } catch (std::exception const&) {
      throw ParseFailure(std::string(kPrecisionEnv)
                         + " must be a positive decimal");
    }
  }

  BoundaryValue value(std::string const& text) {
    try {
      return parse_boundary_value(text, approx_error());
    } catch (std::invalid_argument const& e) {
      throw ParseFailure(e.what());
    }
  }

  struct Common {
    unsigned    p       = 0;
    bool        modular = false;
    std::string out;

    BranchTable table() const {
      if (modular) {
        return modular_table();
      }
      if (p == 0) {
        throw ParseFailure("one of --p or --modular is required");
      }
      if (!is_prime(p)) {
        throw ParseFailure("--p " + std::to_string(p) + " is not prime");
      }
      return branch_table(p);
    }
  };

  void add_group_flags(CLI::App* app, Common& c) {
    auto* p = app->add_option("--p", c.p, "prime level p of Gamma_0(p)");
    auto* m = app->add_flag("--modular", c.modular, "use PSL(2,Z)");
    p->excludes(m);
    app->add_option("--out", c.out, "write the result here instead of stdout");
  }

  void emit(Common const& c, std::string const& text) {
    if (c.out.empty()) {
      std::cout << text;
      return;
    }
    std::ofstream f(c.out, std::ios::binary);
    if (!f) {
      throw CheckFailure("cannot write " + c.out);
    }
    f << text;
  }

  void emit(Common const& c, Json const& j) {
    emit(c, j.dump(2) + "\n");
  }

  DensityFunction density(std::string const& text) {
    if (text == "one") {
      return DensityFunction::one();
    }
    if (text == "invx") {
      return DensityFunction::inv_x();
    }
    if (text.rfind("file:", 0) == 0) {
      std::ifstream f(text.substr(5));
      if (!f) {
        throw ParseFailure("cannot read " + text.substr(5));
      }
      try {
        Json                     j = Json::parse(f);
        std::vector<long double> nodes;
        std::vector<Complex>     values;
        for (auto const& n : j.at("nodes")) {
          nodes.push_back(n.get<double>());
        }
        for (auto const& v : j.at("values")) {
          if (v.is_object()) {
            values.emplace_back(v.at("re").get<double>(),
                                v.value("im", 0.0));
          } else {
            values.emplace_back(v.get<double>(), 0.0);
          }
        }
        return DensityFunction::samples(std::move(nodes), std::move(values));
      } catch (std::exception const& e) {
        throw ParseFailure("bad samples file: " + std::string(e.what()));
      }
    }
    throw ParseFailure("--phi must be one, invx or file:<samples.json>");
  }

  Complex beta_value(std::string const& text) {
    std::istringstream is(text);
    double             re = 0, im = 0;
    char               sep;
    if (!(is >> re)) {
      throw ParseFailure("bad --beta '" + text + "'");
    }
    if (is >> sep) {
      if (sep != ',' || !(is >> im) || (is >> sep)) {
        throw ParseFailure("--beta takes <re> or <re>,<im>");
      }
    }
    return {re, im};
  }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cusp-expansion cross sections for Gamma_0(p) and PSL(2,Z)"};
  app.require_subcommand(1);

  // domain
  Common      dom;
  std::string svg_path;
  bool        no_cells = false;
  auto*       c_domain = app.add_subcommand("domain", "Ford domain JSON and SVG");
  add_group_flags(c_domain, dom);
  c_domain->add_option("--svg", svg_path, "also write an SVG picture");
  c_domain->add_flag("--no-cells", no_cells, "omit the cell bottoms in the SVG");

  // branches
  Common br;
  auto*  c_branches = app.add_subcommand("branches", "branch table JSON");
  add_group_flags(c_branches, br);

  // code
  Common      cd;
  std::string code_x, code_y;
  std::size_t steps = 50, past = 0;
  bool        code_trace = false;
  auto*       c_code = app.add_subcommand("code", "coding sequence of x or (x, y)");
  add_group_flags(c_code, cd);
  c_code->add_option("--x", code_x, "forward endpoint")->required();
  c_code->add_option("--y", code_y, "backward endpoint (two-sided coding)");
  c_code->add_option("--steps", steps, "future step cap");
  c_code->add_option("--past", past, "past steps (two-sided coding)");
  c_code->add_flag("--trace", code_trace, "include orbit states");

  // cf
  Common      cfc;
  std::string cf_x;
  std::size_t cf_steps = 100000;
  auto*       c_cf = app.add_subcommand("cf", "continued fraction by acceleration");
  c_cf->add_option("--x", cf_x, "positive value")->required();
  c_cf->add_option("--steps", cf_steps, "letter cap");
  c_cf->add_option("--out", cfc.out, "write the result here");

  // return
  Common      rt;
  std::string rt_x, rt_y;
  unsigned    rt_bound   = 50;
  bool        rt_trace   = false, rt_prev = false;
  auto*       c_return   = app.add_subcommand("return", "geometric first return");
  add_group_flags(c_return, rt);
  c_return->add_option("--x", rt_x, "forward endpoint")->required();
  c_return->add_option("--y", rt_y, "backward endpoint")->required();
  c_return->add_option("--bound", rt_bound, "entry bound of the enumeration");
  c_return->add_flag("--trace", rt_trace, "list every crossing");
  c_return->add_flag("--previous", rt_prev,
                     "also report the previous exterior crossing");

  // conjugacy-check
  Common        cc;
  unsigned      samples = 100, cc_bound = 50;
  std::uint64_t seed   = 42;
  std::string   format = "text";
  auto*         c_conj = app.add_subcommand(
      "conjugacy-check", "compare F~ with the geometric first return");
  add_group_flags(c_conj, cc);
  c_conj->add_option("--samples", samples, "number of sampled geodesics");
  c_conj->add_option("--seed", seed, "sampling seed");
  c_conj->add_option("--bound", cc_bound, "entry bound of the enumeration");
  c_conj->add_option("--format", format, "text or json")
      ->check(CLI::IsMember({"text", "json"}));

  // transfer
  Common      tr;
  std::string tr_beta = "1", tr_phi = "one", tr_x;
  bool        two_step = false;
  auto*       c_transfer = app.add_subcommand("transfer", "evaluate (L_beta phi)(x)");
  add_group_flags(c_transfer, tr);
  c_transfer->add_option("--beta", tr_beta, "<re> or <re>,<im>");
  c_transfer->add_option("--phi", tr_phi, "one | invx | file:<samples.json>");
  c_transfer->add_option("--x", tr_x, "evaluation point")->required();
  c_transfer->add_flag("--two-step", two_step, "also evaluate L_beta^2 phi");

  // spectrum
  Common      sp;
  std::string sp_beta = "1";
  unsigned    nodes = 32, count = 10;
  auto*       c_spectrum = app.add_subcommand(
      "spectrum", "collocation eigenvalues sorted by modulus");
  add_group_flags(c_spectrum, sp);
  c_spectrum->add_option("--beta", sp_beta, "<re> or <re>,<im>");
  c_spectrum->add_option("--nodes", nodes, "Chebyshev nodes per interval");
  c_spectrum->add_option("--count", count, "how many eigenvalues to list");

  try {
    app.parse(argc, argv);
  } catch (CLI::ParseError const& e) {
    int status = app.exit(e);
    return status == 0 ? 0 : 2;
  }

  try {
    if (*c_domain) {
      SvgOptions opts;
      opts.draw_cells = !no_cells;
      Json        payload;
      std::string svg;
      if (dom.modular) {
        ModularDomain d = build_modular_domain();
        payload         = to_json(d);
        svg             = modular_svg(d, opts);
      } else {
        dom.table();  // validates p
        FordDomain d = build_domain(dom.p);
        payload      = to_json(d);
        svg          = domain_svg(d, opts);
      }
      if (!svg_path.empty()) {
        std::ofstream f(svg_path, std::ios::binary);
        if (!f) {
          throw CheckFailure("cannot write " + svg_path);
        }
        f << svg;
      }
      emit(dom, document("domain", payload));
    } else if (*c_branches) {
      emit(br, document("branches", to_json(br.table())));
    } else if (*c_code) {
      BranchTable    t = cd.table();
      CodingSequence s;
      if (code_y.empty()) {
        s = code_future(t, value(code_x), steps);
      } else {
        s = code_two_sided(t, value(code_x), value(code_y), steps, past);
      }
      emit(cd, document("coding", to_json(s, code_trace)));
    } else if (*c_cf) {
      BranchTable    t = modular_table();
      CodingSequence s = code_future(t, value(cf_x), cf_steps);
      emit(cfc, document("continued_fraction", to_json(accelerate_to_cf(s))));
    } else if (*c_return) {
      BranchTable  t = rt.table();
      Geodesic     g(value(rt_y), value(rt_x));
      SectionPoint s   = section_point_for(g, t);
      ReturnRecord rec = first_return_geometric(s, t, rt_bound, rt_trace);
      Json         out = to_json(rec, rt_trace);
      out["start_line"] = s.line;
      if (rt_prev) {
        auto prev        = previous_exterior_geometric(s, t, rt_bound);
        out["previous"]  = prev ? to_json(*prev) : Json(nullptr);
      }
      emit(rt, document("return", out));
    } else if (*c_conj) {
      BranchTable     t   = cc.table();
      ConjugacyReport rep = conjugacy_check(t, samples, seed, cc_bound);
      if (format == "json") {
        emit(cc, document("conjugacy", to_json(rep)));
      } else {
        emit(cc, to_text(rep));
      }
      if (!rep.passed()) {
        return 1;
      }
    } else if (*c_transfer) {
      BranchTable     t    = tr.table();
      Complex         beta = beta_value(tr_beta);
      DensityFunction phi  = density(tr_phi);
      BoundaryValue   x    = value(tr_x);
      Json            out{{"beta", to_json(beta)},
                          {"phi", phi.name},
                          {"x", to_string(x)},
                          {"value", to_json(apply_transfer(t, beta, phi, x))}};
      if (two_step) {
        out["two_step"] = to_json(
            apply_transfer_two_step(t, beta, phi, x.to_long_double()));
      }
      emit(tr, document("transfer", out));
    } else if (*c_spectrum) {
      BranchTable         t  = sp.table();
      Complex             b  = beta_value(sp_beta);
      CollocationOperator op = CollocationOperator::build(t, b, nodes);
      auto                ev = op.eigenvalues();
      Json                list = Json::array();
      for (std::size_t i = 0; i < ev.size() && i < count; ++i) {
        list.push_back(to_json(ev[i]));
      }
      auto pw = op.power_iteration();
      emit(sp, document("spectrum",
                        {{"beta", to_json(b)},
                         {"nodes_per_interval", nodes},
                         {"chart_dependent", true},
                         {"eigenvalues", list},
                         {"power_iteration",
                          {{"eigenvalue", to_json(pw.eigenvalue)},
                           {"iterations", pw.iterations},
                           {"change", pw.change}}}}));
    }
  } catch (ParseFailure const& e) {
    std::cerr << document("error", {{"error", "parse"}, {"message", e.what()}})
                     .dump()
              << "\n";
    return 2;
  } catch (std::exception const& e) {
    std::cerr << document("error", {{"error", "check"}, {"message", e.what()}})
                     .dump()
              << "\n";
    return 1;
  }
  return 0;
}
