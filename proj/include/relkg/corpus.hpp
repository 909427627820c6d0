#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "relkg/error.hpp"

namespace relkg {

inline constexpr const char* kNoRelation = "NoRelation";

struct Token {
  int index = 0;  // 1-based position
  std::string surface;
  std::string pos;  // coarse tag (UPOS style)
  int head = 0;     // 0 = root
  std::string deprel;

  bool operator==(const Token&) const = default;
};

struct Sentence {
  std::string id;
  std::string doc_id;
  std::string definition_term;  // empty unless the sentence opens/extends a definition block
  std::vector<Token> tokens;

  int length() const { return static_cast<int>(tokens.size()); }
  const Token& token(int index_1based) const { return tokens[static_cast<std::size_t>(index_1based) - 1]; }
  bool is_definition() const { return !definition_term.empty(); }

  bool operator==(const Sentence&) const = default;
};

/// Checks the tree invariants: contiguous 1..n indices, head in [0,n],
/// head != index, exactly one root, every head chain reaches the root.
/// Returns an empty string when valid, else a diagnostic.
std::string validate_tree(const Sentence& s);

struct Corpus {
  std::vector<Sentence> sentences;
  std::size_t rejected = 0;
  std::vector<std::string> diagnostics;  // one entry per rejected sentence

  const Sentence* find(const std::string& sent_id) const;
  void rebuild_index();

  bool operator==(const Corpus& o) const { return sentences == o.sentences; }

 private:
  std::unordered_map<std::string, std::size_t> index_;
};

/// Reads a 10-column CoNLL-U-style file. Sentences failing the tree
/// invariants are skipped and counted, with a diagnostic naming their id.
/// `definition_markers` controls whether `# def_term = <name>` comments are honored.
Corpus ingest_conllu(const std::string& path, bool definition_markers = true);
Corpus parse_conllu(std::istream& in, bool definition_markers = true);
void write_conllu(const Corpus& corpus, std::ostream& out);

/// Canonical entity id: lowercase, whitespace runs collapsed to a single
/// underscore, leading/trailing punctuation stripped. Idempotent.
/// Throws Error when nothing usable remains.
std::string normalize_entity(const std::string& surface);

struct RelationInventory {
  std::vector<std::string> labels;                // includes NoRelation
  std::vector<std::string> predicate_vocabulary;  // labels minus NoRelation, plus rule-only predicates
  int no_relation = -1;                           // index into labels

  int label_id(const std::string& name) const;
  /// Case-insensitive lookup into predicate_vocabulary (rule and evidence
  /// files spell predicates lowerCamel, the inventory UpperCamel).
  int predicate_id(const std::string& name) const;
  std::size_t size() const { return labels.size(); }

  bool operator==(const RelationInventory& o) const {
    return labels == o.labels && predicate_vocabulary == o.predicate_vocabulary;
  }

  void finalize();  // builds lookup maps; called by loaders

 private:
  std::unordered_map<std::string, int> label_ids_;
  std::unordered_map<std::string, int> predicate_ids_;  // keyed by lowercase name
};

/// One relation name per line; `predicate-only:` prefix adds rule-vocabulary
/// entries that are not classification labels. Duplicates are fatal; a
/// missing NoRelation is appended (noted in *warning when given).
RelationInventory parse_relation_inventory(std::istream& in, std::string* warning = nullptr);
RelationInventory load_relation_inventory(const std::string& path, std::string* warning = nullptr);

/// The bundled 19-label inventory plus the rule-only HasLastSubevent predicate.
RelationInventory default_inventory();

}  // namespace relkg
