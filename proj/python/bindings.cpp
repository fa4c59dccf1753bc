#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "colimit/catalog.hpp"
#include "colimit/cli.hpp"
#include "colimit/colimit.hpp"
#include "colimit/dsl.hpp"
#include "colimit/tensor.hpp"
#include "colimit/wu.hpp"

namespace py = pybind11;
using namespace colimit;

namespace {

py::int_ to_py(const Integer& x) {
  return py::reinterpret_steal<py::int_>(PyLong_FromString(to_string(x).c_str(), nullptr, 10));
}

py::dict invariants_dict(const AbelianInvariants& a) {
  py::list torsion;
  for (const auto& d : a.torsion) torsion.append(to_py(d));
  py::dict out;
  out["free_rank"] = a.free_rank;
  out["torsion"] = torsion;
  out["text"] = a.to_string();
  return out;
}

py::list checks_list(const std::vector<HypothesisCheck>& checks) {
  py::list out;
  for (const auto& c : checks) {
    py::dict d;
    d["what"] = c.what;
    d["passed"] = c.passed;
    d["detail"] = c.detail;
    out.append(d);
  }
  return out;
}

std::vector<FinSubgroup> resolve(const CatalogGroup& g, const std::vector<std::string>& specs) {
  std::vector<FinSubgroup> out;
  for (const auto& s : specs) out.push_back(catalog_subgroup(g, s));
  return out;
}

py::dict colimit_dict(const ColimitReport<FinSubgroup>& r) {
  py::dict d;
  d["formula"] = r.formula;
  d["hypothesis_checks"] = checks_list(r.checks);
  d["numerator_order"] = r.numerator.order();
  d["denominator_order"] = r.denominator.order();
  d["abelian"] = r.abelian;
  d["invariants"] = invariants_dict(r.invariants);
  d["notes"] = r.notes;
  return d;
}

}  // namespace

PYBIND11_MODULE(_colimit, m) {
  m.doc() = "Homotopy formulas for tuples of normal subgroups of finite and free nilpotent groups";

  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<HypothesisError>(m, "HypothesisError", PyExc_RuntimeError);
  py::register_exception<BudgetError>(m, "BudgetError", PyExc_RuntimeError);

  m.def("catalog_names", &catalog_names);
  m.def("catalog_order", [](const std::string& name) { return catalog_order(name); });
  m.def("normal_subgroup_orders", [](const std::string& name) {
    std::vector<std::size_t> out;
    for (const auto& h : normal_subgroups(catalog(name).group)) out.push_back(h.order());
    return out;
  });

  m.def(
      "pi_n",
      [](const std::string& group, const std::vector<std::string>& subgroups) {
        auto g = catalog(group);
        return colimit_dict(pi_n_colimit(NormalTuple<FinSubgroup>(resolve(g, subgroups))));
      },
      py::arg("group"), py::arg("subgroups"));
  m.def(
      "is_connected",
      [](const std::string& group, const std::vector<std::string>& subgroups) {
        auto g = catalog(group);
        return is_connected_tuple(NormalTuple<FinSubgroup>(resolve(g, subgroups))).connected;
      },
      py::arg("group"), py::arg("subgroups"));
  m.def(
      "pi2",
      [](const std::string& group, const std::vector<std::string>& subgroups) {
        auto g = catalog(group);
        auto s = resolve(g, subgroups);
        if (s.size() != 3) throw InputError("pi2 needs three subgroups");
        return colimit_dict(pi_2_colimit_n3(s[0], s[1], s[2]));
      },
      py::arg("group"), py::arg("subgroups"));
  m.def(
      "h1",
      [](const std::string& group, const std::vector<std::string>& subgroups) {
        auto g = catalog(group);
        auto s = resolve(g, subgroups);
        if (s.size() != 2) throw InputError("h1 needs two subgroups");
        return colimit_dict(h1_GMN(s[0], s[1]));
      },
      py::arg("group"), py::arg("subgroups"));

  m.def(
      "boundary_kernel",
      [](const std::string& group, const std::vector<std::string>& subgroups, const std::string& strategy) {
        auto g = catalog(group);
        auto tp = build_T(resolve(g, subgroups));
        if (strategy != "hlt" && strategy != "felsch") throw InputError("strategy must be hlt or felsch");
        KernelReport k;
        {
          py::gil_scoped_release release;
          k = kernel_of_boundary(tp, kDefaultCosetLimit, strategy == "hlt" ? Strategy::hlt : Strategy::felsch);
        }
        py::dict d;
        d["complete"] = k.complete;
        d["t_order"] = k.t_order;
        d["image_order"] = k.image_order;
        d["kernel_order"] = k.kernel_order;
        d["kernel_abelianization"] = invariants_dict(k.kernel_abelianization);
        return d;
      },
      py::arg("group"), py::arg("subgroups"), py::arg("strategy") = "hlt");

  m.def(
      "wu",
      [](int n, int cls, std::size_t budget) {
        WuReport rep;
        {
          py::gil_scoped_release release;
          rep = wu_group(wu_context({n, cls, budget}));
        }
        py::dict d;
        d["n"] = n;
        d["truncated_at_class"] = cls;
        d["tuples"] = rep.tuples;
        d["generators"] = rep.generators;
        d["numerator_igs"] = rep.numerator.hirsch_length();
        d["denominator_igs"] = rep.denominator.hirsch_length();
        d["invariants"] = invariants_dict(rep.invariants);
        return d;
      },
      py::arg("n"), py::arg("cls"), py::arg("budget") = kDefaultPcBudget);
  m.def(
      "wu_membership",
      [](int n, int cls, const std::string& word) {
        auto ctx = wu_context({n, cls});
        auto rep = wu_group(ctx);
        auto mem = membership_check(parse_word(word, ctx.alphabet), ctx, rep);
        py::dict d;
        d["in_numerator"] = mem.in_numerator;
        d["in_denominator"] = mem.in_denominator;
        if (mem.order_known) d["order"] = mem.order ? py::object(to_py(*mem.order)) : py::object(py::none());
        return d;
      },
      py::arg("n"), py::arg("cls"), py::arg("word"));
  m.def("hopf_element", [](int k) { return hopf_term(k).render(hopf_alphabet(k)); }, py::arg("k"));
  m.def("basis_size", [](int rank, int cls) { return PcGroup::free_nilpotent(rank, cls)->size(); });

  m.def(
      "run",
      [](const std::vector<std::string>& args) {
        std::vector<std::string> all{"colimit"};
        all.insert(all.end(), args.begin(), args.end());
        std::vector<const char*> argv;
        for (const auto& a : all) argv.push_back(a.c_str());
        std::ostringstream out, err;
        int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Runs the command-line front end; returns (exit code, stdout, stderr).");
}
