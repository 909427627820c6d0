#include "relkg/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iostream>
#include <sstream>

namespace relkg {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    std::size_t tab = line.find('\t', start);
    if (tab == std::string::npos) {
      out.push_back(line.substr(start));
      break;
    }
    out.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
  return out;
}

// `# key = value` comment; returns value when the key matches.
std::optional<std::string> comment_value(const std::string& line, const std::string& key) {
  std::string body = trim(line.substr(1));
  if (body.rfind(key, 0) != 0) return std::nullopt;
  std::string rest = trim(body.substr(key.size()));
  if (rest.empty() || rest[0] != '=') return std::nullopt;
  return trim(rest.substr(1));
}

}  // namespace

std::string validate_tree(const Sentence& s) {
  const int n = s.length();
  if (n == 0) return "sentence " + s.id + ": empty";
  int roots = 0;
  for (int i = 0; i < n; ++i) {
    const Token& t = s.tokens[static_cast<std::size_t>(i)];
    if (t.index != i + 1)
      return "sentence " + s.id + ": token indices not contiguous at position " + std::to_string(i + 1);
    if (t.head < 0 || t.head > n)
      return "sentence " + s.id + ": token " + std::to_string(t.index) + " head " + std::to_string(t.head) +
             " out of range";
    if (t.head == t.index)
      return "sentence " + s.id + ": token " + std::to_string(t.index) + " is its own head";
    if (t.head == 0) ++roots;
  }
  if (roots != 1) return "sentence " + s.id + ": expected exactly 1 root, found " + std::to_string(roots);
  for (int start = 1; start <= n; ++start) {
    int cur = start, steps = 0;
    while (cur != 0) {
      cur = s.token(cur).head;
      if (++steps > n)
        return "sentence " + s.id + ": cyclic head links reachable from token " + std::to_string(start);
    }
  }
  return {};
}

const Sentence* Corpus::find(const std::string& sent_id) const {
  auto it = index_.find(sent_id);
  return it == index_.end() ? nullptr : &sentences[it->second];
}

void Corpus::rebuild_index() {
  index_.clear();
  for (std::size_t i = 0; i < sentences.size(); ++i) index_[sentences[i].id] = i;
}

Corpus parse_conllu(std::istream& in, bool definition_markers) {
  Corpus corpus;
  Sentence cur;
  bool malformed = false;
  std::string malformed_reason;
  std::size_t auto_id = 0;

  auto flush = [&]() {
    if (cur.tokens.empty() && cur.id.empty()) {
      cur = Sentence{};
      malformed = false;
      return;
    }
    if (cur.id.empty()) cur.id = "s" + std::to_string(++auto_id);
    std::string err = malformed ? malformed_reason : validate_tree(cur);
    if (!err.empty()) {
      ++corpus.rejected;
      if (malformed) err = "sentence " + cur.id + ": " + err;
      corpus.diagnostics.push_back(err);
    } else {
      corpus.sentences.push_back(std::move(cur));
    }
    cur = Sentence{};
    malformed = false;
  };

  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) {
      flush();
      continue;
    }
    if (line[0] == '#') {
      if (auto v = comment_value(line, "sent_id")) cur.id = *v;
      if (auto v = comment_value(line, "doc_id")) cur.doc_id = *v;
      if (definition_markers) {
        if (auto v = comment_value(line, "def_term")) cur.definition_term = normalize_entity(*v);
      }
      continue;
    }
    auto cols = split_tabs(line);
    if (cols.size() != 10) {
      malformed = true;
      malformed_reason = "expected 10 tab-separated columns, got " + std::to_string(cols.size());
      continue;
    }
    Token t;
    try {
      std::size_t pos = 0;
      t.index = std::stoi(cols[0], &pos);
      if (pos != cols[0].size()) throw std::invalid_argument("range or decimal id");
      t.head = std::stoi(cols[6], &pos);
      if (pos != cols[6].size()) throw std::invalid_argument("bad head");
    } catch (const std::exception&) {
      malformed = true;
      malformed_reason = "non-integer id/head field";
      continue;
    }
    t.surface = cols[1];
    t.pos = cols[3];
    t.deprel = cols[7];
    cur.tokens.push_back(std::move(t));
  }
  flush();
  corpus.rebuild_index();
  return corpus;
}

Corpus ingest_conllu(const std::string& path, bool definition_markers) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open corpus file: " + path);
  return parse_conllu(in, definition_markers);
}

void write_conllu(const Corpus& corpus, std::ostream& out) {
  for (const Sentence& s : corpus.sentences) {
    out << "# sent_id = " << s.id << '\n';
    if (!s.doc_id.empty()) out << "# doc_id = " << s.doc_id << '\n';
    if (!s.definition_term.empty()) out << "# def_term = " << s.definition_term << '\n';
    for (const Token& t : s.tokens) {
      out << t.index << '\t' << t.surface << "\t_\t" << t.pos << "\t_\t_\t" << t.head << '\t' << t.deprel
          << "\t_\t_\n";
    }
    out << '\n';
  }
}

std::string normalize_entity(const std::string& surface) {
  std::string lower;
  lower.reserve(surface.size());
  for (char c : surface) lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));

  auto is_edge_junk = [](unsigned char c) { return std::isspace(c) || std::ispunct(c); };
  std::size_t b = 0, e = lower.size();
  while (b < e && is_edge_junk(static_cast<unsigned char>(lower[b]))) ++b;
  while (e > b && is_edge_junk(static_cast<unsigned char>(lower[e - 1]))) --e;

  std::string out;
  out.reserve(e - b);
  bool in_ws = false;
  for (std::size_t i = b; i < e; ++i) {
    if (std::isspace(static_cast<unsigned char>(lower[i]))) {
      in_ws = true;
      continue;
    }
    if (in_ws) {
      out.push_back('_');
      in_ws = false;
    }
    out.push_back(lower[i]);
  }
  if (out.empty()) throw Error("entity surface '" + surface + "' normalizes to nothing usable");
  return out;
}

int RelationInventory::label_id(const std::string& name) const {
  auto it = label_ids_.find(name);
  return it == label_ids_.end() ? -1 : it->second;
}

int RelationInventory::predicate_id(const std::string& name) const {
  std::string key;
  key.reserve(name.size());
  for (char c : name) key.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  auto it = predicate_ids_.find(key);
  return it == predicate_ids_.end() ? -1 : it->second;
}

void RelationInventory::finalize() {
  label_ids_.clear();
  predicate_ids_.clear();
  for (std::size_t i = 0; i < labels.size(); ++i) {
    label_ids_[labels[i]] = static_cast<int>(i);
    if (labels[i] == kNoRelation) no_relation = static_cast<int>(i);
  }
  for (std::size_t i = 0; i < predicate_vocabulary.size(); ++i) {
    std::string key;
    for (char c : predicate_vocabulary[i]) key.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    predicate_ids_[key] = static_cast<int>(i);
  }
}

RelationInventory parse_relation_inventory(std::istream& in, std::string* warning) {
  RelationInventory inv;
  std::vector<std::string> predicate_only;
  std::string line;
  std::size_t lineno = 0;
  auto lower = [](const std::string& s) {
    std::string o;
    for (char c : s) o.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    return o;
  };
  std::unordered_map<std::string, std::size_t> seen;  // case-insensitive
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    bool pred_only = false;
    const std::string prefix = "predicate-only:";
    if (t.rfind(prefix, 0) == 0) {
      pred_only = true;
      t = trim(t.substr(prefix.size()));
    }
    if (t.empty()) throw ParseError("empty relation name", lineno);
    auto [it, inserted] = seen.emplace(lower(t), lineno);
    if (!inserted)
      throw ParseError("duplicate relation name '" + t + "' (first at line " + std::to_string(it->second) + ")",
                       lineno);
    if (pred_only)
      predicate_only.push_back(t);
    else
      inv.labels.push_back(t);
  }
  if (std::find(inv.labels.begin(), inv.labels.end(), kNoRelation) == inv.labels.end()) {
    inv.labels.push_back(kNoRelation);
    if (warning) *warning = std::string(kNoRelation) + " missing from inventory; appended";
  }
  for (const std::string& l : inv.labels)
    if (l != kNoRelation) inv.predicate_vocabulary.push_back(l);
  for (const std::string& p : predicate_only) inv.predicate_vocabulary.push_back(p);
  inv.finalize();
  return inv;
}

RelationInventory load_relation_inventory(const std::string& path, std::string* warning) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open relation inventory: " + path);
  return parse_relation_inventory(in, warning);
}

RelationInventory default_inventory() {
  static const char* kDefault =
      "LeadsTo\nUsedBy\nImportantTo\nAffects\nEnables\nPartOf\nHasFirstSubevent\nHasA\nSynonym\nUsedFor\n"
      "RelatedTo\nCauses\nCausesDesire\nHasPrerequisite\nMotivatedByGoal\nHasProperty\nDependsOn\nCapableOf\n"
      "NoRelation\npredicate-only: HasLastSubevent\n";
  std::istringstream in(kDefault);
  return parse_relation_inventory(in);
}

}  // namespace relkg
