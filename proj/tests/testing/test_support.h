// Copyright 2026 The ceglearn Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// Fixture parses, random tree/signature generators and independent oracles
// shared by the test binaries.

#ifndef CEGLEARN_TESTS_TESTING_TEST_SUPPORT_H_
#define CEGLEARN_TESTS_TESTING_TEST_SUPPORT_H_

#include <cstddef>
#include <filesystem>
#include <functional>
#include <limits>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "ceglearn/engine.h"
#include "ceglearn/pattern.h"
#include "ceglearn/signature.h"
#include "ceglearn/tree.h"

namespace ceglearn::testing {

inline std::filesystem::path DataDir() { return CEGLEARN_DATA_DIR; }

inline ParsedSentence Parse(std::string_view ptb, std::string id = "s") {
  return ParseBracketedTree(ptb, std::move(id));
}

// "If the door opens, the alarm sounds."
inline constexpr std::string_view kIfDoor =
    "(S (SBAR (IN If) (S (NP (DT the) (NN door)) (VP (VBZ opens)))) (, ,) "
    "(NP (DT the) (NN alarm)) (VP (VBZ sounds)) (. .))";

// "If the file was correctly updated, there is no output."
inline constexpr std::string_view kIfFile =
    "(S (SBAR (IN If) (S (NP (DT the) (NN file)) (VP (VBD was) (ADVP (RB "
    "correctly)) (VP (VBN updated))))) (, ,) (NP (EX there)) (VP (VBZ is) "
    "(NP (DT no) (NN output))) (. .))";

// "The alarm sounds if the door opens."
inline constexpr std::string_view kTrailingIf =
    "(S (NP (DT The) (NN alarm)) (VP (VBZ sounds) (SBAR (IN if) (S (NP (DT "
    "the) (NN door)) (VP (VBZ opens))))) (. .))";

// "The application is terminated when the x-button is pressed."
inline constexpr std::string_view kXButton =
    "(S (NP (DT The) (NN application)) (VP (VBZ is) (VP (VBN terminated))) "
    "(SBAR (WRB when) (S (NP (DT the) (NN x-button)) (VP (VBZ is) (VP (VBN "
    "pressed))))) (. .))";

// "The alarm sounds."
inline constexpr std::string_view kPlain =
    "(S (NP (DT The) (NN alarm)) (VP (VBZ sounds)) (. .))";

// "New York Central approves the plan." with a multi-word leaf.
inline constexpr std::string_view kMultiWord =
    "(S (NP (NNP New York Central)) (VP (VBZ approves) (NP (DT the) (NN plan))) "
    "(. .))";

// ---------------------------------------------------------------------------
// Random generation.

inline const std::vector<std::string>& PhraseLabels() {
  static const std::vector<std::string> kLabels = {"NP", "VP", "SBAR", "PP", "S"};
  return kLabels;
}

inline const std::vector<std::string>& Words() {
  static const std::vector<std::string> kWords = {"if", "If", "the", "door",
                                                  "opens", "alarm", "when",
                                                  "sounds"};
  return kWords;
}

// Random bracketing rooted in S with at most `max_nodes` constituents.
inline std::string RandomTree(std::mt19937_64& rng, std::size_t max_nodes) {
  std::size_t budget = max_nodes - 1;
  auto pick = [&](std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
  };
  std::function<std::string(const std::string&, std::size_t)> node =
      [&](const std::string& label, std::size_t depth) {
        std::string out = "(" + label;
        const std::size_t want = 1 + pick(3);
        std::size_t made = 0;
        for (std::size_t i = 0; i < want && budget > 0; ++i) {
          --budget;
          ++made;
          if (depth < 3 && budget > 0 && pick(2) == 0) {
            out += " " + node(PhraseLabels()[pick(PhraseLabels().size())], depth + 1);
          } else {
            out += " (X" + std::to_string(pick(2)) + " " + Words()[pick(Words().size())] + ")";
          }
        }
        if (made == 0) out += " (X0 " + Words()[pick(Words().size())] + ")";
        return out + ")";
      };
  return node("S", 0);
}

// Every (path, label) of a tree, collected by an explicit walk.
inline void CollectNodes(const ConstituencyNode& node, TreePath path,
                         std::vector<std::pair<TreePath, std::string>>& out) {
  out.emplace_back(path, node.label);
  for (std::size_t i = 0; i < node.children.size(); ++i) {
    CollectNodes(node.children[i], path.child(i), out);
  }
}

// Random signature of at most `max_nodes` nodes drawn from the shape of `source`,
// with labels occasionally perturbed and up to two keyword constraints.
inline Signature RandomSignature(std::mt19937_64& rng, const ParsedSentence& source,
                                 std::size_t max_nodes) {
  std::vector<std::pair<TreePath, std::string>> nodes;
  CollectNodes(source.tree, {}, nodes);
  auto pick = [&](std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
  };
  std::map<TreePath, std::string> chosen{{TreePath{}, "S"}};
  const std::size_t target = 1 + pick(max_nodes);
  for (std::size_t tries = 0; chosen.size() < target && tries < 50; ++tries) {
    const auto& [path, label] = nodes[pick(nodes.size())];
    if (path.is_root() || chosen.count(path) || !chosen.count(path.parent())) continue;
    std::string l = label;
    if (pick(6) == 0) l = PhraseLabels()[pick(PhraseLabels().size())];
    if (pick(10) == 0) {
      // Shift the position so it may fall outside the tree.
      std::vector<std::size_t> steps = path.steps;
      steps.back() += 1 + pick(2);
      if (!chosen.count(TreePath(steps))) chosen.emplace(TreePath(steps), l);
      continue;
    }
    chosen.emplace(path, l);
  }
  std::vector<TreePath> paths;
  for (const auto& [p, l] : chosen) paths.push_back(p);
  std::vector<LexicalConstraint> constraints;
  const std::size_t n_constraints = pick(3);
  for (std::size_t i = 0; i < n_constraints; ++i) {
    LexicalConstraint c{paths[pick(paths.size())], ToLower(Words()[pick(Words().size())])};
    bool dup = false;
    for (const auto& o : constraints) dup = dup || o == c;
    if (!dup) constraints.push_back(c);
  }
  return Signature::FromParts(chosen, constraints);
}

// ---------------------------------------------------------------------------
// Oracles.

// Compliance by enumeration: gathers every tree position with its label and
// the lowercased words of its leaves, then checks the signature element by
// element. Shares no code with IsCompliant.
inline bool OracleCompliant(const Signature& sig, const ParsedSentence& s) {
  struct Info {
    std::string label;
    std::set<std::string> words;
  };
  std::map<std::vector<std::size_t>, Info> table;
  std::function<std::set<std::string>(const ConstituencyNode&, std::vector<std::size_t>)>
      walk = [&](const ConstituencyNode& n, std::vector<std::size_t> steps) {
        std::set<std::string> words;
        if (n.leaf_tokens) {
          for (std::size_t i = n.leaf_tokens->begin; i < n.leaf_tokens->end; ++i) {
            std::string w;
            for (char c : s.tokens[i].text) {
              w += static_cast<char>(c >= 'A' && c <= 'Z' ? c - 'A' + 'a' : c);
            }
            words.insert(w);
          }
        }
        for (std::size_t i = 0; i < n.children.size(); ++i) {
          auto child_steps = steps;
          child_steps.push_back(i);
          const auto sub = walk(n.children[i], child_steps);
          words.insert(sub.begin(), sub.end());
        }
        table[steps] = {n.label, words};
        return words;
      };
  walk(s.tree, {});
  for (const auto& [path, label] : sig.nodes()) {
    auto it = table.find(path.steps);
    if (it == table.end() || it->second.label != label) return false;
  }
  for (const auto& c : sig.constraints()) {
    auto it = table.find(c.path.steps);
    if (it == table.end() || !it->second.words.count(c.keyword)) return false;
  }
  return true;
}

// Minimum number of constituents tiling [span.begin, span.end) exactly, or
// SIZE_MAX when no tiling exists. Dynamic program over all node spans.
inline std::size_t MinimumCover(const ParsedSentence& s, TokenSpan span) {
  std::vector<TokenSpan> spans;
  std::function<void(const ConstituencyNode&)> walk = [&](const ConstituencyNode& n) {
    spans.push_back(n.span);
    for (const auto& c : n.children) walk(c);
  };
  walk(s.tree);
  constexpr std::size_t kInf = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> best(span.end + 1, kInf);
  best[span.end] = 0;
  for (std::size_t i = span.end; i-- > span.begin;) {
    for (const auto& sp : spans) {
      if (sp.begin == i && sp.end <= span.end && best[sp.end] != kInf) {
        best[i] = std::min(best[i], best[sp.end] + 1);
      }
    }
  }
  return best[span.begin];
}

// Principle check written against the oracle compliance predicate.
inline std::size_t OracleViolations(const EngineState& state) {
  std::set<std::pair<PatternId, std::string>> exempt;
  for (const auto& c : state.conflicts) exempt.emplace(c.pattern_id, c.sentence_id);
  std::size_t violations = 0;
  for (const auto& p : state.patterns) {
    for (const auto& id : p.accepted) {
      const CorpusEntry* e = state.FindSentence(id);
      if (!e || !e->gold) {
        ++violations;
        continue;
      }
      violations += !OracleCompliant(p.signature, e->sentence);
      const auto r = ApplyExtractor(p.extractor, e->sentence);
      const auto* g = std::get_if<CauseEffectGraph>(&r);
      violations += !(g && g->cause.text == e->gold->cause.text &&
                      g->effect.text == e->gold->effect.text);
    }
    for (const auto& id : state.noncausal) {
      const CorpusEntry* e = state.FindSentence(id);
      if (!e) {
        ++violations;
        continue;
      }
      if (OracleCompliant(p.signature, e->sentence) &&
          !exempt.count({p.id, id})) {
        ++violations;
      }
    }
  }
  return violations;
}

}  // namespace ceglearn::testing

#endif  // CEGLEARN_TESTS_TESTING_TEST_SUPPORT_H_
