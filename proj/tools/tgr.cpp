// Command-line front end: batch computations over tensor and pencil JSON
// files, catalog export, and the acceptance battery.

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "tgr/json_io.hpp"
#include "tgr/verify.hpp"

namespace {

struct Cli {
  std::string field_flag;
  std::uint64_t seed = 0;
  long spair_budget = tgr::kDefaultSPairBudget;
  long chart_budget = tgr::kDefaultChartBudget;
  bool json_out = false;
  std::string cmd;
  std::string path;
  int bound = 0;
  std::string name;
  std::string only;
  bool inject_fault = false;
};

std::optional<std::string> catalog_name(const std::string& path) {
  for (const char* prefix : {"catalog-pencil:", "catalog:"})
    if (path.rfind(prefix, 0) == 0) return path.substr(std::strlen(prefix));
  return std::nullopt;
}

tgr::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw tgr::ParseError("cannot open " + path);
  try {
    tgr::json j;
    in >> j;
    return j;
  } catch (const std::exception& e) {
    throw tgr::ParseError("invalid JSON in " + path + ": " + e.what());
  }
}

tgr::FieldSpec resolve_field(const Cli& c) {
  if (!c.field_flag.empty()) return tgr::FieldSpec::parse(c.field_flag);
  const bool reads_tensor_file = (c.cmd == "gr" || c.cmd == "classify3" || c.cmd == "mlrank" ||
                                  c.cmd == "sr-leq" || c.cmd == "decompose") &&
                                 !catalog_name(c.path);
  if (reads_tensor_file) return tgr::tensor_json_field(read_json_file(c.path));
  if (const char* env = std::getenv("TGR_FIELD")) return tgr::FieldSpec::parse(env);
  return tgr::FieldSpec::prime(tgr::kDefaultPrime);
}

template <class F>
tgr::Tensor<F> load_tensor(const Cli& c, const tgr::FieldSpec& fs) {
  if (const auto name = catalog_name(c.path)) return tgr::catalog_entry<F>(*name, fs).tensor;
  return tgr::tensor_from_json<F>(read_json_file(c.path), fs);
}

template <class F>
tgr::LinearMatrix<F> load_pencil(const Cli& c, const tgr::FieldSpec& fs) {
  if (const auto name = catalog_name(c.path)) return tgr::catalog_entry<F>(*name, fs).matrix;
  return tgr::pencil_from_json<F>(read_json_file(c.path), fs);
}

void emit(const Cli& c, const tgr::json& j) { std::cout << j.dump(c.json_out ? -1 : 2) << "\n"; }

template <class F>
int cmd_gr(const Cli& c, const tgr::FieldSpec& fs) {
  const tgr::Tensor<F> t = load_tensor<F>(c, fs);
  if (t.order() == 3) {
    const tgr::GRReport rep = tgr::gr_alternative(t, c.spair_budget);
    if (c.json_out) {
      std::cout << tgr::gr_report_to_json(rep, c.seed).dump() << "\n";
      return 0;
    }
    std::cout << "gr = " << rep.value << "\n";
    for (int ax = 0; ax < 3; ++ax) {
      std::cout << "axis " << ax << ":";
      for (const auto& [i, v] : rep.per_axis[static_cast<std::size_t>(ax)])
        std::cout << "  i=" << i << " -> " << v;
      std::cout << "  (min at i=" << rep.achieving_i[static_cast<std::size_t>(ax)] << ")\n";
    }
    return 0;
  }
  const long v = tgr::gr(t, c.spair_budget);
  if (c.json_out) {
    tgr::json j;
    j["gr"] = v;
    j["per_axis"] = tgr::json::array();
    j["seed"] = c.seed;
    std::cout << j.dump() << "\n";
  } else {
    std::cout << "gr = " << v << "\n";
  }
  return 0;
}

template <class F>
int cmd_classify3(const Cli& c, const tgr::FieldSpec& fs) {
  const tgr::GR3Label<F> lab =
      tgr::classify_gr3(load_tensor<F>(c, fs), {c.chart_budget, c.spair_budget});
  if (c.json_out) {
    tgr::json j;
    j["label"] = tgr::gr3_kind_name(lab.label);
    j["gr"] = lab.gr_value;
    j["bounded_axis"] = lab.bounded_axis ? tgr::json(*lab.bounded_axis) : tgr::json(nullptr);
    j["evidence"] = lab.evidence;
    std::cout << j.dump() << "\n";
    return 0;
  }
  std::cout << tgr::gr3_kind_name(lab.label) << "\n";
  std::cout << "gr = " << lab.gr_value << "\n";
  if (lab.bounded_axis) std::cout << "bounded axis = " << *lab.bounded_axis << "\n";
  if (!lab.evidence.empty()) std::cout << lab.evidence << "\n";
  return 0;
}

template <class F>
int cmd_mlrank(const Cli& c, const tgr::FieldSpec& fs) {
  const std::vector<int> ml = tgr::multilinear_ranks(load_tensor<F>(c, fs));
  if (c.json_out) {
    tgr::json j;
    j["mlrank"] = ml;
    std::cout << j.dump() << "\n";
    return 0;
  }
  std::cout << "ml = (";
  for (std::size_t i = 0; i < ml.size(); ++i) std::cout << (i ? ", " : "") << ml[i];
  std::cout << ")\n";
  return 0;
}

template <class F>
int cmd_codim(const Cli& c, const tgr::FieldSpec& fs) {
  const long cd = tgr::stratum_codim(load_pencil<F>(c, fs), c.bound, c.spair_budget);
  if (c.json_out) {
    tgr::json j;
    j["r"] = c.bound;
    j["codim"] = cd;
    std::cout << j.dump() << "\n";
  } else {
    std::cout << "codim = " << cd << "\n";
  }
  return 0;
}

template <class F>
int cmd_kappa(const Cli& c, const tgr::FieldSpec& fs) {
  const tgr::KappaReport<F> rep = tgr::kappa(load_pencil<F>(c, fs), c.spair_budget);
  const auto strings = [](const std::vector<F>& v) {
    std::vector<std::string> out;
    for (const F& x : v) out.push_back(x.str());
    return out;
  };
  if (c.json_out) {
    tgr::json j;
    j["kappa"] = rep.kappa;
    j["col_side"] = rep.col_side;
    j["row_side"] = rep.row_side;
    j["u"] = strings(rep.u);
    j["w"] = strings(rep.w);
    std::cout << j.dump() << "\n";
    return 0;
  }
  std::cout << "kappa = " << rep.kappa << "\n";
  std::cout << "col side = " << rep.col_side << ", row side = " << rep.row_side << "\n";
  return 0;
}

template <class F>
int cmd_sr_leq(const Cli& c, const tgr::FieldSpec& fs) {
  const tgr::Tensor<F> t = load_tensor<F>(c, fs);
  const tgr::SRDecision<F> d = tgr::decide_slice_rank_leq(t, c.bound, {c.chart_budget, c.spair_budget});
  if (c.json_out) {
    tgr::json j;
    j["r"] = d.r;
    j["yes"] = d.yes;
    if (d.witness) {
      j["codims"] = d.witness->codims;
      tgr::json bases = tgr::json::array();
      for (const auto& basis : d.witness->dual_bases) {
        tgr::json rows = tgr::json::array();
        for (const auto& row : basis) {
          tgr::json vals = tgr::json::array();
          for (const F& x : row) vals.push_back(x.str());
          rows.push_back(std::move(vals));
        }
        bases.push_back(std::move(rows));
      }
      j["dual_bases"] = std::move(bases);
    } else {
      j["codims"] = nullptr;
    }
    std::cout << j.dump() << "\n";
    return 0;
  }
  std::cout << (d.yes ? "yes" : "no") << "\n";
  if (d.witness)
    std::cout << "witness codims = (" << d.witness->codims[0] << ", " << d.witness->codims[1] << ", "
              << d.witness->codims[2] << ")\n";
  return 0;
}

template <class F>
int cmd_decompose(const Cli& c, const tgr::FieldSpec& fs) {
  const tgr::DecompositionCertificate<F> cert = tgr::find_decomposition(
      load_tensor<F>(c, fs), {}, tgr::kDefaultRandomHyperplanes, c.seed, c.spair_budget);
  const bool split = cert.kind == tgr::DecompKind::split;
  if (c.json_out) {
    tgr::json j;
    j["kind"] = split ? "split" : "none-found";
    j["total_gr"] = cert.total_gr;
    j["steps"] = cert.steps;
    j["seed"] = cert.seed;
    tgr::json parts = tgr::json::array();
    for (const auto& p : cert.parts) {
      tgr::json pj;
      pj["role"] = p.role;
      pj["gr"] = p.gr;
      pj["tensor"] = tgr::tensor_to_json(p.part);
      parts.push_back(std::move(pj));
    }
    j["parts"] = std::move(parts);
    tgr::json used = tgr::json::array();
    for (const auto& h : cert.used) {
      tgr::json hj;
      hj["axis"] = h.axis;
      std::vector<std::string> phi;
      for (const F& x : h.phi) phi.push_back(x.str());
      hj["phi"] = phi;
      used.push_back(std::move(hj));
    }
    j["used"] = std::move(used);
    std::cout << j.dump() << "\n";
    return 0;
  }
  if (!split) {
    std::cout << "none-found (gr = " << cert.total_gr << ")\n";
    return 0;
  }
  std::cout << "split: total gr = " << cert.total_gr << " over " << cert.parts.size() << " parts ("
            << cert.steps << " steps)\n";
  for (std::size_t i = 0; i < cert.parts.size(); ++i)
    std::cout << "part " << i << ": " << cert.parts[i].role << ", gr = " << cert.parts[i].gr << "\n";
  return 0;
}

template <class F>
int cmd_catalog(const Cli& c, const tgr::FieldSpec& fs) {
  if (c.name.empty()) {
    if (c.json_out) {
      std::cout << tgr::json(tgr::catalog_names()).dump() << "\n";
      return 0;
    }
    for (const std::string& n : tgr::catalog_names()) std::cout << n << "\n";
    return 0;
  }
  const tgr::CatalogEntry<F> entry = tgr::catalog_entry<F>(c.name, fs);
  emit(c, entry.pencil_primary ? tgr::pencil_to_json(entry.matrix) : tgr::tensor_to_json(entry.tensor));
  return 0;
}

int cmd_verify(const Cli& c, const tgr::FieldSpec& fs) {
  tgr::VerifyOptions vo;
  vo.field = fs;
  vo.seed = c.seed;
  vo.spair_budget = c.spair_budget;
  vo.chart_budget = c.chart_budget;
  vo.only = c.only;
  vo.inject_fault = c.inject_fault;
  const std::vector<tgr::CriterionResult> results =
      tgr::run_verification(vo, c.json_out ? nullptr : &std::cout);
  bool all = true;
  for (const auto& r : results) all = all && r.pass;
  if (c.json_out) {
    tgr::json j;
    tgr::json rows = tgr::json::array();
    for (const auto& r : results) {
      tgr::json row;
      row["id"] = r.id;
      row["pass"] = r.pass;
      row["detail"] = r.detail;
      rows.push_back(std::move(row));
    }
    j["results"] = std::move(rows);
    j["pass"] = all;
    std::cout << j.dump() << "\n";
  } else if (results.empty()) {
    std::cerr << "no checks matched the filter\n";
  } else {
    std::cout << (all ? "all checks passed" : "FAILURES:");
    if (!all)
      for (const auto& r : results)
        if (!r.pass) std::cout << " " << r.id;
    std::cout << "\n";
  }
  return all ? 0 : 1;
}

template <class F>
int run_all(const Cli& c, const tgr::FieldSpec& fs) {
  if (c.cmd == "gr") return cmd_gr<F>(c, fs);
  if (c.cmd == "classify3") return cmd_classify3<F>(c, fs);
  if (c.cmd == "mlrank") return cmd_mlrank<F>(c, fs);
  if (c.cmd == "codim") return cmd_codim<F>(c, fs);
  if (c.cmd == "kappa") return cmd_kappa<F>(c, fs);
  if (c.cmd == "sr-leq") return cmd_sr_leq<F>(c, fs);
  if (c.cmd == "decompose") return cmd_decompose<F>(c, fs);
  if (c.cmd == "catalog") return cmd_catalog<F>(c, fs);
  if (c.cmd == "verify") return cmd_verify(c, fs);
  throw tgr::InputError("unknown command " + c.cmd);
}

}  // namespace

int main(int argc, char** argv) {
  Cli c;
  CLI::App app{"exact geometric rank and determinantal variety toolkit"};
  app.require_subcommand(1);
  app.add_option("--field", c.field_flag, "coefficient field: qq or fp:<prime>");
  app.add_option("--seed", c.seed, "seed for randomized searches");
  app.add_option("--spair-budget", c.spair_budget, "pair limit per basis computation");
  app.add_option("--chart-budget", c.chart_budget, "chart limit per cover enumeration");
  app.add_flag("--json", c.json_out, "machine-readable output");

  const auto add_file = [&c](CLI::App* s) {
    s->add_option("file", c.path, "tensor/pencil JSON path, catalog:<name>, or catalog-pencil:<name>")
        ->required();
    s->fallthrough();
  };
  add_file(app.add_subcommand("gr", "geometric rank with the per-axis stratification"));
  add_file(app.add_subcommand("classify3", "label a tensor of geometric rank at most 3"));
  add_file(app.add_subcommand("mlrank", "multilinear ranks"));
  auto* s_cd = app.add_subcommand("codim", "codimension of a rank stratum");
  add_file(s_cd);
  s_cd->add_option("r", c.bound, "rank of the stratum")->required();
  add_file(app.add_subcommand("kappa", "compression defect of a pencil"));
  auto* s_sr = app.add_subcommand("sr-leq", "decide slice rank at most r");
  add_file(s_sr);
  s_sr->add_option("r", c.bound, "slice-rank bound")->required();
  add_file(app.add_subcommand("decompose", "search for a hyperplane splitting off rank"));
  auto* s_ca = app.add_subcommand("catalog", "list known tensors or export one as JSON");
  s_ca->add_option("name", c.name, "catalog entry to export");
  s_ca->fallthrough();
  auto* s_ve = app.add_subcommand("verify", "run the acceptance battery");
  s_ve->add_option("--only", c.only, "glob filter over check ids");
  s_ve->add_flag("--inject-fault", c.inject_fault, "harness hook: corrupt one expected value");
  s_ve->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  c.cmd = app.get_subcommands().front()->get_name();

  try {
    const tgr::FieldSpec fs = resolve_field(c);
    return fs.kind == tgr::FieldKind::rationals ? run_all<tgr::Rat>(c, fs) : run_all<tgr::Fp>(c, fs);
  } catch (const tgr::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const tgr::InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const tgr::LimitError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const tgr::ConsistencyError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  }
}
