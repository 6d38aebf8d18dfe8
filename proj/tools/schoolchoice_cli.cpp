// schoolchoice: command-line front end for the library.

#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "schoolchoice/axioms.hpp"
#include "schoolchoice/charax.hpp"
#include "schoolchoice/fixtures.hpp"
#include "schoolchoice/io.hpp"
#include "schoolchoice/mechanisms.hpp"
#include "schoolchoice/reports.hpp"
#include "schoolchoice/stability.hpp"
#include "schoolchoice/sweeps.hpp"

using namespace schoolchoice;

namespace {

std::string format = "json";

void emit(const Json& document) {
  if (format == "table")
    std::cout << render_table(document);
  else
    std::cout << document.dump(2) << '\n';
}

std::vector<Student> parse_order(const std::string& text, const Context& context) {
  std::vector<Student> order;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) order.push_back(context.student_index(item));
  return order;
}

int run_reproduce(const std::string& name) {
  std::vector<FixtureReport> reports;
  if (name == "all") {
    reports = reproduce_all();
    if (reports.empty()) throw DomainError("no fixtures registered");
  } else {
    reports.push_back(reproduce_fixture(name));
  }
  bool ok = true;
  for (const auto& r : reports) ok = ok && r.passed();
  if (format == "table") {
    for (const auto& r : reports) {
      std::cout << r.name << "  " << r.title << "  " << (r.passed() ? "PASS" : "FAIL") << '\n';
      for (const auto& c : r.checks)
        std::cout << "  " << (c.passed() ? "ok  " : "FAIL") << (c.published ? " [published] " : " [derived]   ")
                  << c.label << ": " << c.actual
                  << (c.passed() ? std::string() : "  (expected " + c.expected + ")") << '\n';
    }
    std::cout << (ok ? "PASS" : "FAIL") << '\n';
  } else {
    Json list = Json::array();
    for (const auto& r : reports) list.push_back(fixture_report_to_json(r));
    emit({{"passed", ok}, {"fixtures", list}});
  }
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"School choice mechanisms: matching, stability audits and axiom checks"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "table"}));

  std::string instance_path, matching_path, mechanism = "da", order_text, axiom, profile_a, profile_b, student;
  std::string fixture, sweep_kind;
  bool trace = false, exhaustive = false, all_witnesses = false, all_priorities = false;
  int coalition = 3;
  std::uint64_t seed = Scope{}.seed;
  std::size_t samples = 0;
  SweepOptions sweep;
  std::vector<std::string> capacity_text;

  auto* run = app.add_subcommand("run", "Run a mechanism on an instance");
  run->add_option("--mechanism", mechanism, "da, da-school, boston, sd, median, da-choice or fx-*");
  run->add_option("--instance", instance_path)->required();
  run->add_option("--order", order_text, "Serial dictatorship order, e.g. 3,1,2");
  run->add_flag("--trace", trace, "Include the round-by-round trace");

  auto* audit = app.add_subcommand("audit", "Audit a matching for stability");
  audit->add_option("--instance", instance_path)->required();
  audit->add_option("--matching", matching_path)->required();

  auto* enumerate = app.add_subcommand("enumerate", "List every stable matching");
  enumerate->add_option("--instance", instance_path)->required();

  auto* cycles = app.add_subcommand("cycles", "Improvement graphs between DA(P) and DA(P')");
  cycles->add_option("--instance", instance_path)->required();
  cycles->add_option("--profile-a", profile_a, "P (defaults to the instance profile)");
  cycles->add_option("--profile-b", profile_b, "P' = (P'_i, P_-i)")->required();
  cycles->add_option("--student", student, "The deviating student i")->required();

  auto* check = app.add_subcommand("check", "Check an incentive axiom by search over profiles");
  check->add_option("--axiom", axiom, "sp, nb, lnb, wnb, gsp, lgsp, gnb, lgnb, coll")->required();
  check->add_option("--mechanism", mechanism);
  check->add_option("--instance", instance_path)->required();
  check->add_option("--order", order_text);
  check->add_option("--coalition", coalition, "Largest coalition size");
  check->add_option("--seed", seed);
  check->add_option("--samples", samples, "Base profiles when sampling");
  check->add_flag("--exhaustive", exhaustive);
  check->add_flag("--all-witnesses", all_witnesses);

  auto* characterize = app.add_subcommand("characterize", "Check the axioms characterizing DA");
  characterize->add_option("--mechanism", mechanism, "da, fx-ek1 or fx-c1");
  characterize->add_option("--universe", instance_path)->required();
  characterize->add_option("--seed", seed);
  characterize->add_flag("--exhaustive", exhaustive);
  characterize->add_flag("--all-witnesses", all_witnesses);

  auto* reproduce = app.add_subcommand("reproduce", "Reproduce a worked example (or all)");
  reproduce->add_option("fixture", fixture, "Fixture name or 'all'")->required();

  auto* sweep_cmd = app.add_subcommand("sweep", "Run a property sweep over small contexts");
  sweep_cmd->add_option("kind", sweep_kind, "theorem1, remark1, lemma1, lemma2, corollary2, theorem3")->required();
  sweep_cmd->add_option("--n", sweep.bounds.max_students, "Largest number of students");
  sweep_cmd->add_option("--s", sweep.bounds.max_schools, "Largest number of schools");
  sweep_cmd->add_option("--q", sweep.bounds.max_capacity, "Largest capacity");
  sweep_cmd->add_option("--capacities", capacity_text, "corollary2 capacity vectors, e.g. 1,1 2,1");
  sweep_cmd->add_option("--seed", sweep.seed);
  sweep_cmd->add_option("--samples", sweep.samples, "D_c profiles per context (theorem3)");
  sweep_cmd->add_option("--coalition", sweep.max_coalition);
  sweep_cmd->add_flag("--exhaustive", exhaustive);
  sweep_cmd->add_flag("--all-priorities", all_priorities, "Do not fix the first school's priority");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      const Instance inst = load_instance(instance_path);
      const Context& c = inst.context;
      Json out = {{"mechanism", mechanism}};
      Trace t;
      Matching mu;
      if (trace && (mechanism == "da" || mechanism == "da-school" || mechanism == "boston")) {
        if (mechanism == "da") mu = da_student(c, inst.profile, &t);
        if (mechanism == "da-school") mu = da_school(c, inst.profile, &t);
        if (mechanism == "boston") mu = boston(c, inst.profile, &t);
      } else {
        mu = mechanism_by_name(mechanism, inst, parse_order(order_text, c))(c, inst.profile);
      }
      out["matching"] = matching_to_json(mu, c);
      if (trace) out["trace"] = trace_to_json(t, c, mechanism == "da-school");
      emit(out);
    } else if (audit->parsed()) {
      const Instance inst = load_instance(instance_path);
      const Matching mu = matching_from_json(read_json_file(matching_path), inst.context);
      emit(audit_to_json(audit_matching(mu, inst.context, inst.profile), inst.context));
    } else if (enumerate->parsed()) {
      const Instance inst = load_instance(instance_path);
      emit(stable_set_to_json(enumerate_stable(inst.context, inst.profile), inst.context));
    } else if (cycles->parsed()) {
      const Instance inst = load_instance(instance_path);
      const Context& c = inst.context;
      const Profile p = profile_a.empty() ? inst.profile : profile_from_json(read_json_file(profile_a), c);
      const Profile q = profile_from_json(read_json_file(profile_b), c);
      const Student i = c.student_index(student);
      for (Student j = 0; j < c.num_students(); ++j)
        if (j != i && !(p[j] == q[j]))
          throw DomainError("profiles differ for student " + c.student_name(j), "--profile-b");
      emit(cycle_report(c, p, q));
    } else if (check->parsed()) {
      const Instance inst = load_instance(instance_path);
      const auto a = parse_axiom(axiom);
      if (!a) throw DomainError("unknown axiom '" + axiom + "'", "--axiom");
      Scope scope;
      scope.coverage = exhaustive ? Coverage::Exhaustive : Coverage::Automatic;
      scope.seed = seed;
      scope.max_coalition = coalition;
      if (samples) scope.samples = samples;
      scope.max_witnesses = all_witnesses ? 0 : 1;
      const Mechanism m = mechanism_by_name(mechanism, inst, parse_order(order_text, inst.context));
      Json out = {{"mechanism", mechanism}};
      out.update(verdict_to_json(check_axiom(*a, m, inst.context, scope), inst.context));
      emit(out);
      return 0;
    } else if (characterize->parsed()) {
      const Instance inst = load_instance(instance_path);
      Scope scope;
      scope.coverage = exhaustive ? Coverage::Exhaustive : Coverage::Automatic;
      scope.seed = seed;
      scope.max_witnesses = all_witnesses ? 0 : 1;
      const PopulationMechanism m = population_mechanism_by_name(mechanism);
      Json out = {{"mechanism", mechanism}};
      out.update(characterization_to_json(verify_characterization(m, inst.context, scope), inst.context));
      emit(out);
    } else if (reproduce->parsed()) {
      return run_reproduce(fixture);
    } else if (sweep_cmd->parsed()) {
      const auto kind = parse_sweep(sweep_kind);
      if (!kind) throw DomainError("unknown sweep '" + sweep_kind + "'");
      sweep.coverage = exhaustive ? Coverage::Exhaustive : Coverage::Automatic;
      sweep.bounds.relabel = !all_priorities;
      for (const std::string& text : capacity_text) {
        std::vector<int> q;
        std::stringstream in(text);
        std::string item;
        while (std::getline(in, item, ',')) q.push_back(std::stoi(item));
        sweep.capacities.push_back(q);
      }
      const SweepReport report = run_sweep(*kind, sweep);
      Json out = sweep_report_to_json(report, sweep);
      if (format == "table") out["wall_time_s"] = report.seconds;
      emit(out);
      std::cerr << sweep_name(*kind) << ": " << report.counterexamples << " counterexamples in " << report.seconds
                << " s\n";
      return report.clean() ? 0 : 1;
    }
  } catch (const BudgetExceeded& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const DomainError& e) {
    std::cerr << "error: " << (e.where().empty() ? "" : e.where() + ": ") << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
