#include "schoolchoice/mechanisms.hpp"

#include <algorithm>

#include "schoolchoice/stability.hpp"

namespace schoolchoice {

namespace {

void sort_by_priority(const Context& context, School s, std::vector<Student>& students) {
  std::sort(students.begin(), students.end(),
            [&](Student a, Student b) { return context.higher_priority(s, a, b); });
}

Matching run_student_proposing(const Context& context, const Profile& profile, StudentSet population,
                               Trace* trace) {
  const int n = context.num_students();
  const int m = context.num_schools();
  std::vector<School> assignment(n, kAbsent);
  std::vector<int> next(n, 0);
  std::vector<std::vector<Student>> held(m);
  std::vector<Student> free;
  for (Student i = 0; i < n; ++i) {
    if (!contains(population, i)) continue;
    assignment[i] = kOutside;
    free.push_back(i);
  }

  std::vector<std::vector<Student>> incoming(m);
  while (!free.empty()) {
    TraceRound round;
    bool any = false;
    for (Student i : free) {
      auto ranking = profile[i].ranking();
      if (next[i] >= static_cast<int>(ranking.size())) continue;
      School s = ranking[next[i]];
      if (s == kOutside) continue;  // admissible set exhausted
      ++next[i];
      incoming[s].push_back(i);
      any = true;
      if (trace) round.proposals.emplace_back(i, s);
    }
    if (!any) break;

    std::vector<Student> rejected;
    for (School s = 0; s < m; ++s) {
      if (incoming[s].empty()) continue;
      std::vector<Student>& pool = held[s];
      pool.insert(pool.end(), incoming[s].begin(), incoming[s].end());
      incoming[s].clear();
      sort_by_priority(context, s, pool);
      while (static_cast<int>(pool.size()) > context.capacity(s)) {
        rejected.push_back(pool.back());
        if (trace) round.rejected.emplace_back(pool.back(), s);
        pool.pop_back();
      }
    }
    if (trace) {
      for (School s = 0; s < m; ++s)
        for (Student i : held[s]) round.accepted.emplace_back(i, s);
      trace->push_back(std::move(round));
    }
    std::sort(rejected.begin(), rejected.end());
    free = std::move(rejected);
  }

  for (School s = 0; s < m; ++s)
    for (Student i : held[s]) assignment[i] = s;
  return Matching(std::move(assignment));
}

}  // namespace

Matching da_student(const Context& context, const Profile& profile, Trace* trace) {
  return run_student_proposing(context, profile, full_set(context.num_students()), trace);
}

Matching da_student(const Context& context, const Profile& profile, StudentSet population) {
  return run_student_proposing(context, profile, population, nullptr);
}

Matching da_school(const Context& context, const Profile& profile, Trace* trace) {
  const int n = context.num_students();
  const int m = context.num_schools();
  std::vector<School> holding(n, kOutside);
  std::vector<int> next(m, 0);
  std::vector<int> outstanding(m, 0);
  std::vector<std::vector<School>> offers(n);

  while (true) {
    TraceRound round;
    bool any = false;
    for (School s = 0; s < m; ++s) {
      while (outstanding[s] < context.capacity(s) && next[s] < n) {
        Student j = context.priority(s)[next[s]++];
        if (trace) round.proposals.emplace_back(s, j);
        any = true;
        if (!profile[j].admissible(s)) {
          if (trace) round.rejected.emplace_back(s, j);
          continue;
        }
        offers[j].push_back(s);
        ++outstanding[s];
      }
    }
    if (!any) break;
    for (Student j = 0; j < n; ++j) {
      if (offers[j].empty()) continue;
      School best = holding[j];
      for (School s : offers[j])
        if (best == kOutside || profile[j].prefers(s, best)) best = s;
      if (holding[j] != kOutside && holding[j] != best) {
        --outstanding[holding[j]];
        if (trace) round.rejected.emplace_back(holding[j], j);
      }
      for (School s : offers[j]) {
        if (s == best) continue;
        --outstanding[s];
        if (trace) round.rejected.emplace_back(s, j);
      }
      holding[j] = best;
      offers[j].clear();
    }
    if (trace) {
      for (Student j = 0; j < n; ++j)
        if (holding[j] != kOutside) round.accepted.emplace_back(holding[j], j);
      trace->push_back(std::move(round));
    }
  }
  return Matching(std::move(holding));
}

Matching boston(const Context& context, const Profile& profile, Trace* trace) {
  const int n = context.num_students();
  const int m = context.num_schools();
  std::vector<School> assignment(n, kOutside);
  std::vector<bool> done(n, false);
  std::vector<int> seats = context.capacities();

  for (int k = 0; k <= m; ++k) {
    TraceRound round;
    std::vector<std::vector<Student>> applicants(m);
    bool any = false;
    for (Student i = 0; i < n; ++i) {
      if (done[i]) continue;
      School s = profile[i].ranking()[k];
      if (s == kOutside) {
        done[i] = true;
        continue;
      }
      applicants[s].push_back(i);
      any = true;
      if (trace) round.proposals.emplace_back(i, s);
    }
    if (!any) break;
    for (School s = 0; s < m; ++s) {
      sort_by_priority(context, s, applicants[s]);
      for (Student i : applicants[s]) {
        if (seats[s] > 0) {
          --seats[s];
          assignment[i] = s;
          done[i] = true;
          if (trace) round.accepted.emplace_back(i, s);
        } else if (trace) {
          round.rejected.emplace_back(i, s);
        }
      }
    }
    if (trace) trace->push_back(std::move(round));
  }
  return Matching(std::move(assignment));
}

Matching serial_dictatorship(const Context& context, const Profile& profile, const std::vector<Student>& order) {
  const int n = context.num_students();
  std::vector<Student> sorted = order;
  std::sort(sorted.begin(), sorted.end());
  bool permutation = static_cast<int>(sorted.size()) == n;
  for (int k = 0; permutation && k < n; ++k) permutation = sorted[k] == k;
  if (!permutation) throw DomainError("dictatorship order is not a permutation of the students");

  std::vector<int> seats = context.capacities();
  Matching result = Matching::unassigned(n);
  for (Student i : order) {
    for (School a : profile[i].ranking()) {
      if (a == kOutside) break;
      if (seats[a] > 0) {
        --seats[a];
        result[i] = a;
        break;
      }
    }
  }
  return result;
}

Matching median_of(const std::vector<Matching>& stable_set, const Profile& profile) {
  if (stable_set.empty()) throw DomainError("median of an empty stable set");
  const int n = stable_set.front().num_students();
  const std::size_t index = stable_set.size() / 2;
  Matching result = Matching::unassigned(n);
  for (Student i = 0; i < n; ++i) {
    std::vector<School> outcomes;
    for (const Matching& m : stable_set) outcomes.push_back(m[i]);
    std::sort(outcomes.begin(), outcomes.end(),
              [&](School a, School b) { return profile[i].prefers(a, b); });
    result[i] = outcomes[index];
  }
  return result;
}

Matching school_median(const Context& context, const Profile& profile, std::uint64_t budget) {
  return median_of(enumerate_stable(context, profile, budget), profile);
}

Mechanism da_mechanism() {
  return {"da", [](const Context& c, const Profile& p) { return da_student(c, p); }};
}

Mechanism da_school_mechanism() {
  return {"da-school", [](const Context& c, const Profile& p) { return da_school(c, p); }};
}

Mechanism boston_mechanism() {
  return {"boston", [](const Context& c, const Profile& p) { return boston(c, p); }};
}

Mechanism serial_dictatorship_mechanism(std::vector<Student> order) {
  return {"sd", [order = std::move(order)](const Context& c, const Profile& p) {
            return serial_dictatorship(c, p, order);
          }};
}

Mechanism school_median_mechanism() {
  return {"median", [](const Context& c, const Profile& p) { return school_median(c, p); }};
}

Mechanism constant_mechanism(Matching fixed) {
  return {"constant", [fixed = std::move(fixed)](const Context&, const Profile&) { return fixed; }};
}

}  // namespace schoolchoice
