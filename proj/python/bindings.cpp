// Python module: every entry point takes and returns JSON text; the package
// wrapper converts to and from Python objects.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "schoolchoice/axioms.hpp"
#include "schoolchoice/charax.hpp"
#include "schoolchoice/fixtures.hpp"
#include "schoolchoice/io.hpp"
#include "schoolchoice/reports.hpp"
#include "schoolchoice/stability.hpp"
#include "schoolchoice/sweeps.hpp"

namespace py = pybind11;
using namespace schoolchoice;

namespace {

std::vector<Student> student_order(const std::vector<std::string>& names, const Context& context) {
  std::vector<Student> order;
  for (const auto& name : names) order.push_back(context.student_index(name));
  return order;
}

std::string run(const std::string& instance, const std::string& mechanism, const std::vector<std::string>& order) {
  const Instance inst = parse_instance(instance);
  const Mechanism m = mechanism_by_name(mechanism, inst, student_order(order, inst.context));
  return matching_to_json(m(inst.context, inst.profile), inst.context).dump();
}

std::string audit(const std::string& instance, const std::string& matching) {
  const Instance inst = parse_instance(instance);
  const Matching mu = matching_from_json(Json::parse(matching), inst.context);
  return audit_to_json(audit_matching(mu, inst.context, inst.profile), inst.context).dump();
}

std::string enumerate(const std::string& instance) {
  const Instance inst = parse_instance(instance);
  return stable_set_to_json(enumerate_stable(inst.context, inst.profile), inst.context).dump();
}

std::string check(const std::string& instance, const std::string& axiom, const std::string& mechanism,
                  int coalition, bool exhaustive, std::uint64_t seed, bool all_witnesses) {
  const Instance inst = parse_instance(instance);
  const auto a = parse_axiom(axiom);
  if (!a) throw DomainError("unknown axiom '" + axiom + "'");
  Scope scope;
  scope.coverage = exhaustive ? Coverage::Exhaustive : Coverage::Automatic;
  scope.max_coalition = coalition;
  scope.seed = seed;
  scope.max_witnesses = all_witnesses ? 0 : 1;
  const Mechanism m = mechanism_by_name(mechanism, inst);
  return verdict_to_json(check_axiom(*a, m, inst.context, scope), inst.context).dump();
}

std::string characterize(const std::string& universe, const std::string& mechanism) {
  const Instance inst = parse_instance(universe);
  const PopulationMechanism m = population_mechanism_by_name(mechanism);
  return characterization_to_json(verify_characterization(m, inst.context), inst.context).dump();
}

std::string cycles(const std::string& instance, const std::string& profile_b, const std::string& profile_a) {
  const Instance inst = parse_instance(instance);
  const Profile p = profile_a.empty() ? inst.profile : profile_from_json(Json::parse(profile_a), inst.context);
  const Profile q = profile_from_json(Json::parse(profile_b), inst.context);
  return cycle_report(inst.context, p, q).dump();
}

std::string ergin_cycles(const std::string& instance) {
  const Instance inst = parse_instance(instance);
  const Context& c = inst.context;
  Json out = Json::array();
  for (const ErginCycle& e : detect_ergin_cycles(c))
    out.push_back({{"s", c.school_name(e.s)},
                   {"s_prime", c.school_name(e.s_prime)},
                   {"i", c.student_name(e.i)},
                   {"j", c.student_name(e.j)},
                   {"k", c.student_name(e.k)},
                   {"N_s", set_to_json(e.n_s, c)},
                   {"N_s_prime", set_to_json(e.n_s_prime, c)}});
  return out.dump();
}

std::string reproduce(const std::string& name) {
  Json out = Json::array();
  if (name == "all") {
    for (const FixtureReport& r : reproduce_all()) out.push_back(fixture_report_to_json(r));
  } else {
    out.push_back(fixture_report_to_json(reproduce_fixture(name)));
  }
  return out.dump();
}

std::string sweep(const std::string& kind, int n, int s, int q, std::uint64_t seed, std::size_t samples) {
  const auto k = parse_sweep(kind);
  if (!k) throw DomainError("unknown sweep '" + kind + "'");
  SweepOptions options;
  options.bounds.max_students = n;
  options.bounds.max_schools = s;
  options.bounds.max_capacity = q;
  options.seed = seed;
  options.samples = samples;
  return sweep_report_to_json(run_sweep(*k, options), options).dump();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "School choice mechanisms, stability audits and axiom checks";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<BudgetExceeded>(m, "BudgetExceeded", PyExc_RuntimeError);

  m.def("run", &run, py::arg("instance"), py::arg("mechanism") = "da",
        py::arg("order") = std::vector<std::string>{});
  m.def("audit", &audit, py::arg("instance"), py::arg("matching"));
  m.def("enumerate_stable", &enumerate, py::arg("instance"));
  m.def("check", &check, py::arg("instance"), py::arg("axiom"), py::arg("mechanism") = "da",
        py::arg("coalition") = 3, py::arg("exhaustive") = false, py::arg("seed") = Scope{}.seed,
        py::arg("all_witnesses") = false);
  m.def("characterize", &characterize, py::arg("universe"), py::arg("mechanism") = "da");
  m.def("cycles", &cycles, py::arg("instance"), py::arg("profile_b"), py::arg("profile_a") = "");
  m.def("ergin_cycles", &ergin_cycles, py::arg("instance"));
  m.def("reproduce", &reproduce, py::arg("name") = "all");
  m.def("sweep", &sweep, py::arg("kind"), py::arg("n") = 4, py::arg("s") = 2, py::arg("q") = 3,
        py::arg("seed") = SweepOptions{}.seed, py::arg("samples") = SweepOptions{}.samples);
  m.def("fixture_names", &fixture_names);
  m.def("fixture_instance", [](const std::string& name) { return serialize_instance(fixture_instance(name)); });
}
