// SPDX-License-Identifier: Apache-2.0
#include "recomp/corpus/lexicon.hpp"

#include <sstream>

#include "recomp/common/io.hpp"

namespace recomp::corpus {

WordList::WordList(std::vector<std::string> words) : words_(std::move(words)) {
  set_.insert(words_.begin(), words_.end());
}

WordList WordList::parse(std::string_view text) {
  std::vector<std::string> words;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    const auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos || line[b] == '#') continue;
    const auto e = line.find_last_not_of(" \t\r");
    words.push_back(line.substr(b, e - b + 1));
  }
  return WordList(std::move(words));
}

WordList WordList::load(const std::filesystem::path& path) { return parse(read_file(path)); }

const WordList& default_stopwords() {
  static const WordList list({
      "i", "me", "my", "myself", "we", "our", "ours", "ourselves", "you", "you're",
      "you've", "you'll", "you'd", "your", "yours", "yourself", "yourselves", "he", "him",
      "his", "himself", "she", "she's", "her", "hers", "herself", "it", "it's", "its",
      "itself", "they", "them", "their", "theirs", "themselves", "what", "which", "who",
      "whom", "this", "that", "that'll", "these", "those", "am", "is", "are", "was", "were",
      "be", "been", "being", "have", "has", "had", "having", "do", "does", "did", "doing",
      "a", "an", "the", "and", "but", "if", "or", "because", "as", "until", "while", "of",
      "at", "by", "for", "with", "about", "against", "between", "into", "through", "during",
      "before", "after", "above", "below", "to", "from", "up", "down", "in", "out", "on",
      "off", "over", "under", "again", "further", "then", "once", "here", "there", "when",
      "where", "why", "how", "all", "any", "both", "each", "few", "more", "most", "other",
      "some", "such", "no", "nor", "not", "only", "own", "same", "so", "than", "too", "very",
      "s", "t", "can", "will", "just", "don", "don't", "should", "should've", "now", "d",
      "ll", "m", "o", "re", "ve", "y", "ain", "aren", "aren't", "couldn", "couldn't",
      "didn", "didn't", "doesn", "doesn't", "hadn", "hadn't", "hasn", "hasn't", "haven",
      "haven't", "isn", "isn't", "ma", "mightn", "mightn't", "mustn", "mustn't", "needn",
      "needn't", "shan", "shan't", "shouldn", "shouldn't", "wasn", "wasn't", "weren",
      "weren't", "won", "won't", "wouldn", "wouldn't",
  });
  return list;
}

const WordList& default_abbreviations() {
  static const WordList list({
      "Mr.",   "Mrs.",  "Ms.",    "Dr.",  "Prof.", "Sr.",   "Jr.",  "St.",   "Mt.",
      "Ft.",   "Gen.",  "Col.",   "Lt.",  "Sgt.",  "Capt.", "Rev.", "Hon.",  "Gov.",
      "Sen.",  "Rep.",  "Pres.",  "e.g.", "i.e.",  "etc.",  "vs.",  "cf.",   "al.",
      "approx.", "Inc.", "Ltd.",  "Co.",  "Corp.", "No.",   "Vol.", "Fig.",  "Jan.",
      "Feb.",  "Aug.",  "Sept.",  "Oct.", "Nov.",  "Dec.",  "U.S.", "U.K.",  "a.m.",
      "p.m.",
  });
  return list;
}

}  // namespace recomp::corpus
