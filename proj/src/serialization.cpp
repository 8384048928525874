#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "grassland/errors.hpp"
#include "grassland/instance.hpp"

namespace grassland {

using nlohmann::json;

namespace {

const json& field(const json& obj, const char* name, const std::string& path) {
  if (!obj.is_object()) throw ParseError(path + " must be an object");
  auto it = obj.find(name);
  if (it == obj.end()) throw ParseError("missing field '" + path + "." + name + "'");
  return *it;
}

double get_number(const json& obj, const char* name, const std::string& path) {
  const json& v = field(obj, name, path);
  if (!v.is_number()) throw ParseError("field '" + path + "." + name + "' must be a number");
  return v.get<double>();
}

template <typename Int>
Int get_integer(const json& obj, const char* name, const std::string& path) {
  const json& v = field(obj, name, path);
  if (!v.is_number_integer()) throw ParseError("field '" + path + "." + name + "' must be an integer");
  return v.get<Int>();
}

std::vector<int> get_int_array(const json& obj, const char* name, const std::string& path) {
  const json& v = field(obj, name, path);
  if (!v.is_array()) throw ParseError("field '" + path + "." + name + "' must be an array");
  std::vector<int> out;
  out.reserve(v.size());
  for (const auto& e : v) {
    if (!e.is_number_integer()) throw ParseError("field '" + path + "." + name + "' must hold integers");
    out.push_back(e.get<int>());
  }
  return out;
}

json parse_document(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ParameterError("cannot write " + path.string());
  out << text;
  if (!out) throw ParameterError("failed writing " + path.string());
}

json uav_to_json(const UavParams& u) {
  json j;
  j["frame_plus_battery_mass_kg"] = u.frame_plus_battery_mass;
  j["gravity_m_per_s2"] = u.gravity;
  j["air_density_kg_per_m3"] = u.air_density;
  j["blade_disc_area_m2"] = u.blade_disc_area;
  j["rotor_count"] = u.rotor_count;
  j["energy_capacity_j"] = u.energy_capacity;
  j["seed_capacity_kg"] = u.seed_capacity;
  j["photo_energy_per_unit_j"] = u.photo_energy_per_unit;
  j["seeding_energy_coeff_j_per_kg"] = u.seeding_energy_coeff;
  j["seed_demand_exponent"] = u.seed_demand_exponent;
  return j;
}

UavParams uav_from_json(const json& j) {
  const std::string p = "uav";
  UavParams u;
  u.frame_plus_battery_mass = get_number(j, "frame_plus_battery_mass_kg", p);
  u.gravity = get_number(j, "gravity_m_per_s2", p);
  u.air_density = get_number(j, "air_density_kg_per_m3", p);
  u.blade_disc_area = get_number(j, "blade_disc_area_m2", p);
  u.rotor_count = get_integer<int>(j, "rotor_count", p);
  u.energy_capacity = get_number(j, "energy_capacity_j", p);
  u.seed_capacity = get_number(j, "seed_capacity_kg", p);
  u.photo_energy_per_unit = get_number(j, "photo_energy_per_unit_j", p);
  u.seeding_energy_coeff = get_number(j, "seeding_energy_coeff_j_per_kg", p);
  u.seed_demand_exponent = get_number(j, "seed_demand_exponent", p);
  return u;
}

}  // namespace

std::string instance_to_json(const Instance& instance) {
  json j;
  j["version"] = kInstanceSchemaVersion;
  j["seed"] = instance.rng_seed;
  j["base"] = {{"x", instance.base.x}, {"y", instance.base.y}};
  j["uav"] = uav_to_json(instance.uav);
  json areas = json::array();
  for (const auto& a : instance.areas) {
    areas.push_back({{"id", a.id}, {"x", a.x}, {"y", a.y}, {"degradation", a.degradation}, {"capacity", a.capacity}});
  }
  j["areas"] = std::move(areas);
  return j.dump(2) + "\n";
}

Instance instance_from_json(const std::string& text) {
  const json j = parse_document(text);
  const std::string root = "instance";
  const int version = get_integer<int>(j, "version", root);
  if (version != kInstanceSchemaVersion) {
    throw ParseError("unsupported instance version " + std::to_string(version));
  }
  Instance inst;
  inst.rng_seed = get_integer<std::uint64_t>(j, "seed", root);
  const json& base = field(j, "base", root);
  inst.base = {get_number(base, "x", "base"), get_number(base, "y", "base")};
  inst.uav = uav_from_json(field(j, "uav", root));

  const json& areas = field(j, "areas", root);
  if (!areas.is_array()) throw ParseError("field 'instance.areas' must be an array");
  for (std::size_t i = 0; i < areas.size(); ++i) {
    const std::string p = "areas[" + std::to_string(i) + "]";
    AreaSpec a;
    a.id = get_integer<int>(areas[i], "id", p);
    a.x = get_number(areas[i], "x", p);
    a.y = get_number(areas[i], "y", p);
    a.degradation = get_number(areas[i], "degradation", p);
    a.capacity = get_integer<int>(areas[i], "capacity", p);
    inst.areas.push_back(a);
  }
  validate(inst);
  return inst;
}

void save_instance(const Instance& instance, const std::filesystem::path& path) {
  write_file(path, instance_to_json(instance));
}

Instance load_instance(const std::filesystem::path& path) { return instance_from_json(read_file(path)); }

std::string instance_fingerprint(const Instance& instance) {
  // FNV-1a over the canonical document.
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : instance_to_json(instance)) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "fnv1a64:%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string solution_to_json(const SolutionDocument& doc) {
  json j;
  j["version"] = kSolutionSchemaVersion;
  j["instance_ref"] = doc.instance_ref;
  j["solver"] = doc.solver;
  j["route"] = doc.solution.route;
  j["sigma"] = doc.solution.sigma;
  j["objective"] = doc.solution.objective;
  j["energy_used"] = doc.solution.energy_used;
  j["seed_used"] = doc.solution.seed_used;
  return j.dump(2) + "\n";
}

SolutionDocument solution_from_json(const std::string& text) {
  const json j = parse_document(text);
  const std::string root = "solution";
  const int version = get_integer<int>(j, "version", root);
  if (version != kSolutionSchemaVersion) {
    throw ParseError("unsupported solution version " + std::to_string(version));
  }
  SolutionDocument doc;
  const json& ref = field(j, "instance_ref", root);
  if (!ref.is_string()) throw ParseError("field 'solution.instance_ref' must be a string");
  doc.instance_ref = ref.get<std::string>();
  if (auto it = j.find("solver"); it != j.end() && it->is_string()) doc.solver = it->get<std::string>();
  doc.solution.route = get_int_array(j, "route", root);
  doc.solution.sigma = get_int_array(j, "sigma", root);
  doc.solution.objective = get_integer<int>(j, "objective", root);
  doc.solution.energy_used = get_number(j, "energy_used", root);
  doc.solution.seed_used = get_number(j, "seed_used", root);
  return doc;
}

void save_solution(const SolutionDocument& doc, const std::filesystem::path& path) {
  write_file(path, solution_to_json(doc));
}

SolutionDocument load_solution(const std::filesystem::path& path) { return solution_from_json(read_file(path)); }

}  // namespace grassland
