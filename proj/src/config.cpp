#include "vbseg/config.hpp"

#include <charconv>
#include <functional>
#include <map>
#include <sstream>

namespace vbseg {

namespace {

std::string trim(const std::string &s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos)
    return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <typename T> T parse_number(const std::string &key, const std::string &value) {
  T out{};
  const auto *end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc{} || ptr != end)
    throw Error(Errc::config, "bad value '" + value + "' for " + key);
  return out;
}

std::vector<Method> parse_methods(const std::string &value) {
  std::vector<Method> methods;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty())
      continue;
    try {
      methods.push_back(parse_method(item));
    } catch (const Error &e) {
      throw Error(Errc::config, e.what());
    }
  }
  return methods;
}

} // namespace

void PipelineConfig::validate() const {
  try {
    diffusion.validate();
    fcm.validate();
    morpho.validate();
  } catch (const Error &e) {
    throw Error(Errc::config, e.what());
  }
  if (fcm.num_clusters > 8)
    throw Error(Errc::config, "fcm.clusters must be in 2..8");
  if (kmeans_clusters < 2 || kmeans_clusters > 8)
    throw Error(Errc::config, "kmeans.clusters must be in 2..8");
  if (kmeans_max_iterations < 1)
    throw Error(Errc::config, "kmeans.max_iterations must be positive");
  if (methods.empty())
    throw Error(Errc::config, "method set is empty");
  if (selection.kind == SelectionPolicy::Kind::explicit_index &&
      (selection.index >= fcm.num_clusters || selection.index >= kmeans_clusters))
    throw Error(Errc::config, "selection index exceeds the cluster count");
}

PipelineConfig parse_config(const std::string &text) {
  PipelineConfig cfg;
  using Setter = std::function<void(const std::string &, const std::string &)>;
  const std::map<std::string, Setter> setters{
      {"diffusion.iterations", [&](auto &k, auto &v) { cfg.diffusion.iterations = parse_number<int>(k, v); }},
      {"diffusion.kappa", [&](auto &k, auto &v) { cfg.diffusion.kappa = parse_number<double>(k, v); }},
      {"diffusion.step", [&](auto &k, auto &v) { cfg.diffusion.step = parse_number<double>(k, v); }},
      {"fcm.clusters", [&](auto &k, auto &v) { cfg.fcm.num_clusters = parse_number<std::size_t>(k, v); }},
      {"fcm.fuzzifier", [&](auto &k, auto &v) { cfg.fcm.fuzzifier = parse_number<double>(k, v); }},
      {"fcm.epsilon", [&](auto &k, auto &v) { cfg.fcm.epsilon = parse_number<double>(k, v); }},
      {"fcm.max_iterations", [&](auto &k, auto &v) { cfg.fcm.max_iterations = parse_number<int>(k, v); }},
      {"fcm.seed", [&](auto &k, auto &v) { cfg.fcm.seed = parse_number<std::uint64_t>(k, v); }},
      {"kmeans.clusters", [&](auto &k, auto &v) { cfg.kmeans_clusters = parse_number<std::size_t>(k, v); }},
      {"kmeans.max_iterations", [&](auto &k, auto &v) { cfg.kmeans_max_iterations = parse_number<int>(k, v); }},
      {"kmeans.seed", [&](auto &k, auto &v) { cfg.kmeans_seed = parse_number<std::uint64_t>(k, v); }},
      {"morpho.erosion_iterations", [&](auto &k, auto &v) { cfg.morpho.erosion_iterations = parse_number<int>(k, v); }},
      {"morpho.min_area_fraction", [&](auto &k, auto &v) { cfg.morpho.min_area_fraction = parse_number<double>(k, v); }},
      {"morpho.aspect_low", [&](auto &k, auto &v) { cfg.morpho.aspect_low = parse_number<double>(k, v); }},
      {"morpho.aspect_high", [&](auto &k, auto &v) { cfg.morpho.aspect_high = parse_number<double>(k, v); }},
      {"morpho.connectivity",
       [&](auto &k, auto &v) {
         const int c = parse_number<int>(k, v);
         if (c != 4 && c != 8)
           throw Error(Errc::config, "morpho.connectivity must be 4 or 8");
         cfg.morpho.connectivity = c == 4 ? Connectivity::four : Connectivity::eight;
       }},
      {"methods", [&](auto &, auto &v) { cfg.methods = parse_methods(v); }},
      {"output_dir", [&](auto &, auto &v) { cfg.output_dir = v; }},
      {"selection",
       [&](auto &k, auto &v) {
         cfg.selection = v == "brightest"
                             ? SelectionPolicy::brightest()
                             : SelectionPolicy::explicit_index(parse_number<std::size_t>(k, v));
       }},
  };

  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    line = trim(line);
    if (line.empty())
      continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw Error(Errc::config, "line " + std::to_string(line_no) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const auto it = setters.find(key);
    if (it == setters.end())
      throw Error(Errc::config, "line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    it->second(key, value);
  }
  cfg.validate();
  return cfg;
}

PipelineConfig load_config(const std::string &path) {
  const Bytes bytes = read_file(path);
  return parse_config(std::string(bytes.begin(), bytes.end()));
}

} // namespace vbseg
