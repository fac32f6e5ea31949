// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "recomp/corpus/lexicon.hpp"
#include "recomp/corpus/types.hpp"

namespace recomp::corpus {

inline constexpr std::size_t kDefaultChunkWords = 100;

/// Reads corpus.jsonl ({"id","title","text"} per line) in file order.
/// Throws ParseError on malformed lines and Error naming any duplicated id.
std::vector<Article> ingest_articles(const std::filesystem::path& path);

/// Non-overlapping documents of exactly `chunk_words` whitespace words (the
/// last may be shorter). Document text is the words joined by single spaces;
/// ids are "{article_id}_{chunk index}".
std::vector<Document> chunk_article(const Article& article,
                                    std::size_t chunk_words = kDefaultChunkWords);

std::vector<Document> chunk_articles(std::span<const Article> articles,
                                     std::size_t chunk_words = kDefaultChunkWords);

/// Rule-based splitter: a boundary follows a word ending in . ! or ? (closing
/// quotes/brackets allowed) when the next word starts with a capital letter
/// (opening quotes/brackets allowed), unless the word is a listed
/// abbreviation. Returned views point into `text`.
std::vector<std::string_view> split_sentence_spans(
    std::string_view text, const WordList& abbreviations = default_abbreviations());

std::vector<Sentence> split_sentences(const Document& doc,
                                      const WordList& abbreviations = default_abbreviations());

/// "{title}: {text}", or the text unchanged when the title is empty.
/// Apply exactly once per sentence.
std::string decontextualize(const Sentence& sentence);

/// Sentences of `docs` in document order, decontextualized.
std::vector<std::string> decontextualized_pool(
    std::span<const Document* const> docs,
    const WordList& abbreviations = default_abbreviations());

}  // namespace recomp::corpus
