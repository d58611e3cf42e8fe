#include "hcg/io.hpp"

#include <fstream>

#include "hcg/errors.hpp"

namespace hcg {

using nlohmann::json;

json graph_to_json(const WeightedGraph& g) {
  json edges = json::array();
  for (auto [u, v] : g.edges()) edges.push_back({u, v});
  return json{{"n", g.node_count()}, {"edges", edges}, {"weights", g.weights()}};
}

WeightedGraph graph_from_json(const json& j) {
  try {
    const auto n = j.at("n").get<std::size_t>();
    std::vector<double> weights = j.contains("weights") ? j.at("weights").get<std::vector<double>>()
                                                        : std::vector<double>(n, 1.0);
    std::vector<std::pair<int, int>> edges;
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 2) throw ConfigError("graph json: edge must be a pair");
      edges.emplace_back(e[0].get<int>(), e[1].get<int>());
    }
    return WeightedGraph(n, edges, std::move(weights));
  } catch (const json::exception& e) {
    throw ConfigError(std::string("graph json: ") + e.what());
  }
}

json instance_to_json(const FleetInstance& inst) {
  json tours = json::array();
  for (const auto& t : inst.tours) {
    json jt{{"id", t.id}, {"cost", t.cost}, {"classes", t.allowed_classes}};
    jt["window"] = t.window ? json{t.window->start, t.window->end} : json(nullptr);
    tours.push_back(std::move(jt));
  }
  json classes = json::array();
  for (const auto& c : inst.classes)
    classes.push_back({{"id", c.id}, {"cost", c.cost}, {"n_min", c.n_min}, {"n_max", c.n_max}});
  json conflicts = json::array();
  for (auto [u, v] : inst.conflicts.edges()) conflicts.push_back({u, v});
  return json{{"version", kInstanceSchemaVersion},
              {"tours", tours},
              {"classes", classes},
              {"conflicts", conflicts}};
}

FleetInstance instance_from_json(const json& j) {
  try {
    const int version = j.at("version").get<int>();
    if (version != kInstanceSchemaVersion)
      throw ConfigError("instance json: unsupported version " + std::to_string(version));
    FleetInstance inst;
    for (const auto& jt : j.at("tours")) {
      Tour t;
      t.id = jt.at("id").get<int>();
      t.cost = jt.at("cost").get<double>();
      t.allowed_classes = jt.at("classes").get<std::vector<int>>();
      if (jt.contains("window") && !jt.at("window").is_null()) {
        const auto w = jt.at("window").get<std::vector<double>>();
        if (w.size() != 2) throw ConfigError("instance json: window must be [start, end]");
        t.window = TimeWindow{w[0], w[1]};
      }
      inst.tours.push_back(std::move(t));
    }
    for (const auto& jc : j.at("classes")) {
      inst.classes.push_back(VehicleClass{jc.at("id").get<int>(), jc.at("cost").get<double>(),
                                          jc.at("n_min").get<int>(), jc.at("n_max").get<int>()});
    }
    inst.conflicts = WeightedGraph(inst.tours.size());
    if (j.contains("conflicts")) {
      for (const auto& e : j.at("conflicts")) {
        if (!e.is_array() || e.size() != 2) throw ConfigError("instance json: conflict must be a pair");
        inst.conflicts.add_edge(e[0].get<int>(), e[1].get<int>());
      }
    } else {
      for (auto [a, b] : conflict_edges_from_tours(inst.tours)) inst.conflicts.add_edge(a, b);
    }
    inst.validate();
    return inst;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("instance json: ") + e.what());
  }
}

void save_instance(const FleetInstance& inst, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << instance_to_json(inst).dump(2) << '\n';
}

FleetInstance load_instance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError("instance json: " + std::string(e.what()));
  }
  return instance_from_json(j);
}

}  // namespace hcg
