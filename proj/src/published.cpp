#include <algorithm>
#include <array>
#include <cctype>

#include "moocd/harness.hpp"

namespace moocd {

namespace {

// Reported modularity over 10 runs (Qmax, Qavg) per benchmark, copied verbatim
// from the literature comparison. Column order matches kModularityAlgorithms.
constexpr std::array<const char*, 13> kModularityAlgorithms{
    "FN",      "BGLL",     "MIGA",         "Meme-net",     "GA-net",     "MOGA-net",  "MODPSO",
    "QIEA-net", "iQIEA-net", "NSGA-III-CCM", "NSGA-III-KRM", "MOEA/D-KRM", "MOEA/D-CCM"};

struct ModularityRow {
  const char* code;
  std::array<double, 13> q_max;
  std::array<double, 13> q_avg;
};

constexpr std::array<ModularityRow, 4> kModularity{{
    {"D1",
     {0.3807, 0.4188, 0.4188, 0.402, 0.4059, 0.4198, 0.4198, 0.4198, 0.4198, 0.4198, 0.4198, 0.4198, 0.4198},
     {0.3807, 0.4188, 0.395, 0.3855, 0.4059, 0.4198, 0.4182, 0.4198, 0.4198, 0.4198, 0.4198, 0.4185, 0.4167}},
    {"D2",
     {0.4897, 0.5118, 0.521, 0.5155, 0.5014, 0.5258, 0.5265, 0.5213, 0.5213, 0.5277, 0.5285, 0.521, 0.5041},
     {0.4897, 0.5118, 0.4631, 0.4832, 0.4948, 0.5225, 0.525, 0.5199, 0.5211, 0.5267, 0.528, 0.5075, 0.4873}},
    {"D3",
     {0.5497, 0.6046, 0.5911, 0.5888, 0.594, 0.528, 0.6046, 0.5824, 0.5988, 0.6046, 0.6046, 0.6046, 0.601},
     {0.5497, 0.6046, 0.548, 0.5432, 0.5833, 0.5177, 0.6015, 0.5567, 0.5812, 0.6038, 0.6043, 0.6009, 0.5971}},
    {"D4",
     {0.502, 0.4986, 0.4988, 0.4833, 0.5033, 0.4993, 0.5264, 0.5214, 0.5269, 0.527, 0.5272, 0.527, 0.5112},
     {0.502, 0.4986, 0.483, 0.4478, 0.4997, 0.4618, 0.5263, 0.5209, 0.5266, 0.5261, 0.5257, 0.525, 0.4956}},
}};

constexpr std::array<const char*, 4> kNmiAlgorithms{"NSGA-III-KRM", "NSGA-III-CCM", "MOEA/D-KRM", "MOEA/D-CCM"};

// Reported NMI (max, avg) per algorithm, columns D1..D4.
constexpr std::array<std::array<double, 4>, 4> kNmiMax{{
    {1, 1, 0.9341, 0.7256},
    {0.7071, 0.6455, 0.9314, 0.5901},
    {1, 1, 0.9361, 0.6114},
    {0.7071, 0.4882, 0.9363, 0.5249},
}};
constexpr std::array<std::array<double, 4>, 4> kNmiAvg{{
    {1, 0.9846, 0.9245, 0.6017},
    {0.6912, 0.6191, 0.9291, 0.5533},
    {0.8535, 0.8891, 0.9043, 0.5948},
    {0.6697, 0.4608, 0.9228, 0.4701},
}};

}  // namespace

std::optional<std::string> benchmark_code(const std::string& dataset) {
  std::string key;
  for (char c : dataset) key.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  if (key == "karate" || key == "d1") return "D1";
  if (key == "dolphins" || key == "d2") return "D2";
  if (key == "football" || key == "d3") return "D3";
  if (key == "polbooks" || key == "d4") return "D4";
  return std::nullopt;
}

std::vector<PublishedModularity> published_modularity(const std::string& dataset) {
  std::vector<PublishedModularity> out;
  auto code = benchmark_code(dataset);
  if (!code) return out;
  for (const auto& row : kModularity) {
    if (*code != row.code) continue;
    for (std::size_t i = 0; i < kModularityAlgorithms.size(); ++i) {
      out.push_back({kModularityAlgorithms[i], row.q_max[i], row.q_avg[i]});
    }
  }
  return out;
}

std::vector<PublishedNmi> published_nmi(const std::string& dataset) {
  std::vector<PublishedNmi> out;
  auto code = benchmark_code(dataset);
  if (!code) return out;
  std::size_t column = static_cast<std::size_t>((*code)[1] - '1');
  for (std::size_t a = 0; a < kNmiAlgorithms.size(); ++a) {
    out.push_back({kNmiAlgorithms[a], kNmiMax[a][column], kNmiAvg[a][column]});
  }
  return out;
}

}  // namespace moocd
