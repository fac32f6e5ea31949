// SPDX-License-Identifier: Apache-2.0
#include "recomp/extractive/contrastive_record.hpp"

#include "recomp/common/error.hpp"

namespace recomp::extractive {

json to_json(const ContrastiveRecord& r) {
  return {{"example_id", r.example_id},         {"input", r.input},
          {"positive", r.positive},             {"negatives", r.negatives},
          {"positive_score", r.positive_score}, {"negative_scores", r.negative_scores}};
}

ContrastiveRecord contrastive_from_json(const json& j) {
  ContrastiveRecord r;
  try {
    r.example_id = j.at("example_id").get<std::string>();
    r.input = j.at("input").get<std::string>();
    r.positive = j.at("positive").get<std::string>();
    r.negatives = j.at("negatives").get<std::vector<std::string>>();
    r.positive_score = j.at("positive_score").get<double>();
    r.negative_scores = j.at("negative_scores").get<std::vector<double>>();
  } catch (const json::exception& e) {
    throw Error(std::string("bad contrastive record: ") + e.what());
  }
  if (r.negatives.empty() || r.negatives.size() > kMaxNegatives) {
    throw Error("contrastive record " + r.example_id + " must have 1..5 negatives");
  }
  if (r.negative_scores.size() != r.negatives.size()) {
    throw Error("contrastive record " + r.example_id + ": negative_scores size mismatch");
  }
  return r;
}

std::vector<ContrastiveRecord> load_contrastive(const std::filesystem::path& path) {
  std::vector<ContrastiveRecord> out;
  read_jsonl(path, [&](std::size_t line, const json& j) {
    try {
      out.push_back(contrastive_from_json(j));
    } catch (const Error& e) {
      throw ParseError(path.string(), line, e.what());
    }
  });
  return out;
}

}  // namespace recomp::extractive
