// SPDX-License-Identifier: Apache-2.0
#include "recomp/evaluation/qa_prompt.hpp"

#include <algorithm>
#include <numeric>

#include "recomp/common/error.hpp"
#include "recomp/common/rng.hpp"

namespace recomp::evaluation {

std::string build_qa_prompt(std::span<const Demo> demos, std::string_view evidence,
                            std::string_view question) {
  if (demos.size() != kDemoCount) {
    throw Error("QA prompt needs exactly " + std::to_string(kDemoCount) + " demos, got " +
                std::to_string(demos.size()));
  }
  std::string out;
  for (const auto& d : demos) {
    out += d.question;
    out += "\nAnswer: ";
    out += d.answer;
    out += "\n\n";
  }
  if (!evidence.empty()) {
    out += evidence;
    out += "\n\n";
  }
  out += question;
  out += "\nAnswer:";
  return out;
}

std::string render_document(const corpus::Document& doc) {
  return doc.title.empty() ? doc.text : doc.title + ": " + doc.text;
}

std::string evidence_ascending(std::span<const retrieval::Hit> hits) {
  std::string out;
  for (auto it = hits.rbegin(); it != hits.rend(); ++it) {
    if (!out.empty()) out += '\n';
    out += render_document(*it->doc);
  }
  return out;
}

std::string documents_descending(std::span<const retrieval::Hit> hits) {
  std::string out;
  for (const auto& h : hits) {
    if (!out.empty()) out += '\n';
    out += render_document(*h.doc);
  }
  return out;
}

std::vector<Demo> sample_demos(std::span<const Demo> pool, std::uint64_t seed) {
  if (pool.size() < kDemoCount) {
    throw Error("need at least " + std::to_string(kDemoCount) + " training examples for demos");
  }
  std::vector<std::size_t> idx(pool.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  Rng rng(seed);
  rng.shuffle(idx);
  std::vector<Demo> out;
  for (std::size_t i = 0; i < kDemoCount; ++i) out.push_back(pool[idx[i]]);
  return out;
}

}  // namespace recomp::evaluation
