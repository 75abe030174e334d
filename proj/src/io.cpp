#include "varispeed/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace varispeed {

using nlohmann::json;

json rational_json(const Rational& q) { return to_string(q); }

Rational rational_from_json(const json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(std::to_string(j.get<long long>()));
  if (j.is_number_unsigned()) return Rational(std::to_string(j.get<unsigned long long>()));
  if (j.is_number_float()) return from_double(j.get<double>());
  throw IoError("expected a rational, found " + j.dump());
}

namespace {

json rational_array(const std::vector<Rational>& xs) {
  json a = json::array();
  for (const auto& x : xs) a.push_back(rational_json(x));
  return a;
}

std::vector<Rational> rationals_from(const json& a, const char* what) {
  if (!a.is_array()) throw IoError(std::string(what) + " must be an array");
  std::vector<Rational> out;
  for (const auto& x : a) out.push_back(rational_from_json(x));
  return out;
}

}  // namespace

json to_json(const Problem& p) {
  json j;
  j["kind"] = to_string(p.instance.kind);
  json jobs = json::array();
  for (const auto& job : p.instance.jobs) {
    json o;
    o["id"] = job.id;
    o["v"] = rational_json(job.volume);
    o["w"] = rational_json(job.weight);
    o["r"] = rational_json(job.release);
    jobs.push_back(std::move(o));
  }
  j["jobs"] = std::move(jobs);
  if (p.speed) j["speed"] = {{"breakpoints", rational_array(p.speed->breakpoints())}, {"speeds", rational_array(p.speed->speeds())}};
  if (p.menu) j["menu"] = {{"speeds", rational_array(p.menu->speeds)}, {"power", rational_array(p.menu->power)}};
  if (p.alpha) j["alpha"] = rational_json(*p.alpha);
  if (p.budget) j["budget"] = rational_json(*p.budget);
  return j;
}

Problem problem_from_json(const json& j) {
  try {
    if (!j.is_object()) throw IoError("problem must be a JSON object");
    if (!j.contains("jobs")) throw IoError("problem has no \"jobs\" array");
    std::vector<Job> jobs;
    for (const auto& o : j.at("jobs")) {
      Job job;
      job.id = o.at("id").get<int>();
      job.volume = rational_from_json(o.at("v"));
      job.weight = rational_from_json(o.at("w"));
      job.release = o.contains("r") ? rational_from_json(o.at("r")) : Rational(0);
      jobs.push_back(std::move(job));
    }
    Problem p;
    const json* speed = j.contains("speed") ? &j.at("speed") : nullptr;
    // the menu and alpha may also sit inside "speed"
    const json* menu = j.contains("menu") ? &j.at("menu") : (speed && speed->contains("menu") ? &speed->at("menu") : nullptr);
    const json* alpha = j.contains("alpha") ? &j.at("alpha") : (speed && speed->contains("alpha") ? &speed->at("alpha") : nullptr);
    if (speed && speed->contains("breakpoints"))
      p.speed.emplace(rationals_from(speed->at("breakpoints"), "breakpoints"), rationals_from(speed->at("speeds"), "speeds"));
    if (menu) p.menu = make_menu(rationals_from(menu->at("speeds"), "menu speeds"), rationals_from(menu->at("power"), "menu power"));
    if (alpha) p.alpha = rational_from_json(*alpha);
    if (j.contains("budget")) p.budget = rational_from_json(j.at("budget"));
    InstanceKind kind = InstanceKind::GivenSpeed;
    if (j.contains("kind"))
      kind = parse_instance_kind(j.at("kind").get<std::string>());
    else if (p.menu)
      kind = InstanceKind::DiscreteEnergy;
    else if (p.alpha)
      kind = InstanceKind::ContinuousEnergy;
    p.instance = make_instance(std::move(jobs), kind);
    return p;
  } catch (const json::exception& e) {
    throw IoError(std::string("malformed problem: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw IoError(std::string("invalid problem: ") + e.what());
  }
}

Problem read_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw IoError(path + ": " + e.what());
  }
  return problem_from_json(j);
}

void write_problem(const std::string& path, const Problem& p) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  out << to_json(p).dump(2) << '\n';
  if (!out) throw IoError("write failed for " + path);
}

std::string canonical_text(const Problem& p) { return to_json(p).dump(); }

std::uint64_t fnv1a(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string problem_hash(const Problem& p) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(canonical_text(p))));
  return buf;
}

json schedule_json(const Instance& inst, const TimeSchedule& ts, const WeightSchedule& ws,
                   const std::vector<double>& energies) {
  json j;
  j["permutation"] = ids_of(inst, ts.order);
  json jobs = json::array();
  for (int k : ts.order) {
    json o;
    o["id"] = inst.jobs[k].id;
    o["C"] = rational_json(ts.completion[k]);
    o["x"] = rational_json(ts.execution[k]);
    o["Cw"] = rational_json(ws.completion[k]);
    if (!energies.empty()) o["E"] = energies[k];
    jobs.push_back(std::move(o));
  }
  j["jobs"] = std::move(jobs);
  return j;
}

json parallel_schedule_json(const Instance& inst, const ParallelSchedule& s) {
  json j;
  j["machines"] = s.machines;
  j["priority"] = ids_of(inst, s.priority);
  json jobs = json::array();
  for (std::size_t k = 0; k < inst.size(); ++k) {
    json o;
    o["id"] = inst.jobs[k].id;
    o["C"] = rational_json(s.completion[k]);
    o["x"] = rational_json(s.execution[k]);
    o["E"] = s.energy[k];
    json fr = json::array();
    for (const auto& f : s.fragments[k])
      fr.push_back({{"machine", f.machine}, {"start", rational_json(f.start)}, {"end", rational_json(f.end)}});
    o["fragments"] = std::move(fr);
    jobs.push_back(std::move(o));
  }
  j["jobs"] = std::move(jobs);
  return j;
}

std::string machine_timeline_csv(const Instance& inst, const ParallelSchedule& s) {
  struct Row {
    int machine;
    Rational start, end;
    int id;
  };
  std::vector<Row> rows;
  for (std::size_t k = 0; k < inst.size(); ++k)
    for (const auto& f : s.fragments[k]) rows.push_back({f.machine, f.start, f.end, inst.jobs[k].id});
  std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    if (a.machine != b.machine) return a.machine < b.machine;
    return a.start < b.start;
  });
  std::ostringstream out;
  out << "machine,job_id,start,end\n";
  for (const auto& r : rows) out << r.machine << ',' << r.id << ',' << to_string(r.start) << ',' << to_string(r.end) << '\n';
  return out.str();
}

}  // namespace varispeed
