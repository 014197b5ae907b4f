#!/usr/bin/env python3
# Copyright 2026 The ceglearn Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Generates the synthetic requirements artifacts under data/.

Every sentence is built from a small grammar of hand-written constituency
templates, so the bracketed parse, the token list and the gold cause/effect
spans are all known by construction. Output is deterministic.

Usage: scripts/gen_fixtures.py [repo-root]
"""

import json
import os
import random
import sys

# A tree is either (pos, word) for a leaf or (label, [children]).


def leaf(pos, word):
    return (pos, word)


def node(label, *children):
    return (label, list(children))


def is_leaf(t):
    return isinstance(t[1], str)


def words(t):
    if is_leaf(t):
        return [t]
    out = []
    for c in t[1]:
        out.extend(words(c))
    return out


def ptb(t):
    if is_leaf(t):
        return "(%s %s)" % t
    return "(%s %s)" % (t[0], " ".join(ptb(c) for c in t[1]))


PUNCT = {",", ".", ";", ":", "!", "?", ")"}


def detok(tokens):
    out = ""
    for i, w in enumerate(tokens):
        if i == 0:
            out = w
        elif w in PUNCT or out.endswith("("):
            out += w
        else:
            out += " " + w
    return out


def capitalize_first(t):
    """Capitalizes the first word of a tree (returns a new tree)."""
    if is_leaf(t):
        return (t[0], t[1][:1].upper() + t[1][1:])
    children = list(t[1])
    children[0] = capitalize_first(children[0])
    return (t[0], children)


NOUNS = [
    ("DT", "the", "NN", "file"), ("DT", "the", "NN", "user"),
    ("DT", "the", "NN", "system"), ("DT", "the", "NN", "operator"),
    ("DT", "the", "NN", "game"), ("DT", "the", "NN", "database"),
    ("DT", "the", "NN", "sensor"), ("DT", "the", "NN", "registration"),
    ("DT", "the", "NN", "connection"), ("DT", "the", "NN", "report"),
    ("DT", "the", "NN", "password"), ("DT", "the", "NN", "server"),
    ("DT", "the", "NN", "train"), ("DT", "the", "NN", "driver"),
    ("DT", "the", "NN", "message"), ("DT", "the", "NN", "application"),
    ("DT", "the", "NN", "door"), ("DT", "the", "NN", "archive"),
    ("DT", "the", "NN", "player"), ("DT", "the", "NN", "printer"),
]
ADJ_NOUNS = [
    ("main", "window"), ("audible", "indication"), ("backup", "copy"),
    ("emergency", "brake"), ("status", "bar"), ("login", "screen"),
]
PARTICIPLES = ["saved", "updated", "deleted", "closed", "rejected",
               "pressed", "terminated", "displayed", "received", "locked"]
ADJECTIVES = ["invalid", "unavailable", "full", "empty", "expired",
              "successful", "available", "active"]
MODAL_VERBS = ["display", "log", "store", "send", "reject", "stop",
               "notify", "record", "archive", "print"]
INTRANSITIVE = ["fails", "stops", "restarts", "responds", "halts"]


class Gen:
    def __init__(self, seed):
        self.rng = random.Random(seed)

    def np(self):
        r = self.rng.random()
        if r < 0.75:
            dt, d, nn, n = self.rng.choice(NOUNS)
            return node("NP", leaf(dt, d), leaf(nn, n))
        a, n = self.rng.choice(ADJ_NOUNS)
        return node("NP", leaf("DT", "the"), leaf("JJ", a), leaf("NN", n))

    def vp(self):
        r = self.rng.randrange(5)
        if r == 0:
            return node("VP", leaf("VBZ", "is"),
                        node("VP", leaf("VBN", self.rng.choice(PARTICIPLES))))
        if r == 1:
            return node("VP", leaf("VBZ", "is"),
                        node("ADJP", leaf("JJ", self.rng.choice(ADJECTIVES))))
        if r == 2:
            return node("VP", leaf("VBZ", "is"), leaf("RB", "not"),
                        node("VP", leaf("VBN", self.rng.choice(PARTICIPLES))))
        if r == 3:
            return node("VP", leaf("MD", "shall"),
                        node("VP", leaf("VB", self.rng.choice(MODAL_VERBS)),
                             self.np()))
        return node("VP", leaf("VBZ", self.rng.choice(INTRANSITIVE)))

    def clause(self):
        return node("S", self.np(), self.vp())

    # Each template returns (tree, label, cause_nodes, effect_nodes) where
    # the node lists are subtrees whose combined yield is the gold phrase.

    def fronted(self, cue_pos, cue, wh=False):
        cause = self.clause()
        subj, pred = self.np(), self.vp()
        cue_leaf = leaf(cue_pos, cue)
        head = node("WHADVP", cue_leaf) if wh else cue_leaf
        tree = node("S", node("SBAR", head, cause), leaf(",", ","),
                    subj, pred, leaf(".", "."))
        return tree, [cause], [subj, pred]

    def trailing(self, cue_pos, cue, wh=False):
        cause = self.clause()
        subj = self.np()
        cue_leaf = leaf(cue_pos, cue)
        head = node("WHADVP", cue_leaf) if wh else cue_leaf
        sbar = node("SBAR", head, cause)
        if self.rng.random() < 0.5:
            part = leaf("VBN", self.rng.choice(PARTICIPLES))
            pred = node("VP", leaf("VBZ", "is"), node("VP", part, sbar))
            effect = [subj, pred[1][0], part]
        else:
            verb = leaf("VB", self.rng.choice(MODAL_VERBS))
            obj = self.np()
            pred = node("VP", leaf("MD", "shall"),
                        node("VP", verb, obj, sbar))
            effect = [subj, pred[1][0], verb, obj]
        tree = node("S", subj, pred, leaf(".", "."))
        return tree, [cause], effect

    def causal(self, kind):
        if kind == "if":
            return self.fronted("IN", "if")
        if kind == "when_front":
            return self.fronted("WRB", "when", wh=True)
        if kind == "when":
            return self.trailing("WRB", "when", wh=True)
        if kind == "because":
            return self.trailing("IN", "because")
        if kind == "if_trailing":
            return self.trailing("IN", "if")
        raise ValueError(kind)

    def noncausal(self, kind):
        if kind == "plain":
            return node("S", self.np(), self.vp(), leaf(".", "."))
        if kind == "located":
            return node("S", self.np(),
                        node("VP", leaf("MD", "shall"),
                             node("VP", leaf("VB", self.rng.choice(MODAL_VERBS)),
                                  self.np(),
                                  node("PP", leaf("IN", "in"), self.np()))),
                        leaf(".", "."))
        if kind == "although":
            tree, _, _ = self.fronted("IN", "although")
            return tree
        if kind == "that":
            return node("S", self.np(),
                        node("VP", leaf("MD", "shall"),
                             node("VP", leaf("VB", "ensure"),
                                  node("SBAR", leaf("IN", "that"),
                                       self.clause()))),
                        leaf(".", "."))
        if kind == "coordinated":
            return node("S", self.clause(), leaf("CC", "and"), self.clause(),
                        leaf(".", "."))
        if kind == "heading":
            # Parser output without an S root; the engine rejects these.
            return node("NP", leaf("JJ", self.rng.choice(ADJECTIVES)),
                        leaf("NNS", "requirements"))
        raise ValueError(kind)


def span_of(tree, parts):
    """Token span covered by the given subtrees of tree (by identity)."""
    positions = []
    counter = [0]

    def walk(t, inside):
        mark = inside or any(t is p for p in parts)
        if is_leaf(t):
            if mark:
                positions.append(counter[0])
            counter[0] += 1
            return
        for c in t[1]:
            walk(c, mark)

    walk(tree, False)
    lo, hi = min(positions), max(positions) + 1
    assert hi - lo == len(positions), "gold phrase must be contiguous"
    return [lo, hi]


def conllu(tokens):
    root = next((i for i, (pos, _) in enumerate(tokens)
                 if pos.startswith("VB") or pos == "MD"), 0)
    rows = []
    for i, (pos, w) in enumerate(tokens):
        head = 0 if i == root else root + 1
        rel = "root" if i == root else ("punct" if pos in (",", ".") else "dep")
        rows.append("\t".join([str(i + 1), w, w.lower(), pos, pos, "_",
                               str(head), rel, "_", "_"]))
    return "\n".join(rows) + "\n"


def record(gen, rid, label, kind, with_deps):
    if label == "causal":
        tree, cause_parts, effect_parts = gen.causal(kind)
        cspan = span_of(tree, cause_parts)
        espan = span_of(tree, effect_parts)
    else:
        tree = gen.noncausal(kind)
        cspan = espan = None
    tree = capitalize_first(tree)
    toks = words(tree)
    rec = {"id": rid, "text": detok([w for _, w in toks]), "ptb": ptb(tree),
           "label": label}
    if with_deps:
        rec["conllu"] = conllu(toks)
    if label == "causal":
        rec["cause_span"] = cspan
        rec["effect_span"] = espan
    return rec


def artifact(seed, causal_kinds, noncausal_kinds, n_causal, n_noncausal,
             n_headings=0):
    gen = Gen(seed)
    plan = [("causal", gen.rng.choice(causal_kinds)) for _ in range(n_causal)]
    plan += [("noncausal", gen.rng.choice(noncausal_kinds))
             for _ in range(n_noncausal)]
    plan += [("noncausal", "heading")] * n_headings
    gen.rng.shuffle(plan)
    out, seen = [], set()
    for label, kind in plan:
        for _ in range(100):
            rec = record(gen, "s%03d" % (len(out) + 1), label, kind,
                         with_deps=gen.rng.random() < 0.3)
            if rec["text"] not in seen:
                break
        seen.add(rec["text"])
        out.append(rec)
    return out


def write(path, records):
    os.makedirs(os.path.dirname(path), exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        for r in records:
            f.write(json.dumps(r, sort_keys=True) + "\n")


ALL_CAUSAL = ["if", "when_front", "when", "because", "if_trailing"]
ALL_NONCAUSAL = ["plain", "located", "that", "coordinated", "although"]


def main():
    root = sys.argv[1] if len(sys.argv) > 1 else os.path.join(
        os.path.dirname(os.path.abspath(__file__)), "..")
    data = os.path.join(root, "data")

    # Corpus mirroring the ~12% causal ratio of real requirements documents.
    corpus = os.path.join(data, "corpus")
    write(os.path.join(corpus, "if_heavy.jsonl"),
          artifact(11, ["if"], ALL_NONCAUSAL, 10, 0))
    write(os.path.join(corpus, "alarm_panel.jsonl"),
          artifact(21, ALL_CAUSAL, ALL_NONCAUSAL, 8, 65, n_headings=2))
    write(os.path.join(corpus, "doc_archive.jsonl"),
          artifact(31, ALL_CAUSAL, ALL_NONCAUSAL, 9, 84, n_headings=2))
    write(os.path.join(corpus, "game_saves.jsonl"),
          artifact(41, ["if", "if", "when_front"], ALL_NONCAUSAL, 6, 53,
                   n_headings=1))
    write(os.path.join(corpus, "rail_control.jsonl"),
          artifact(51, ALL_CAUSAL, ALL_NONCAUSAL, 9, 76))

    # Small fixture: 10 records, 4 causal.
    write(os.path.join(data, "fixtures", "mixed_small.jsonl"),
          artifact(61, ALL_CAUSAL, ["plain", "located"], 4, 6))

    # Adversarial set: fronted "If" clauses against structurally identical
    # concessive "Although" clauses, forcing specification.
    adv = os.path.join(data, "adversarial")
    write(os.path.join(adv, "a_target.jsonl"),
          artifact(71, ["if"], ["although", "although", "plain"], 10, 30))
    write(os.path.join(adv, "b_pretrain.jsonl"),
          artifact(81, ["if"], ["although", "although", "plain"], 10, 40))
    write(os.path.join(adv, "c_pretrain.jsonl"),
          artifact(91, ["if"], ["although", "although", "plain"], 10, 40))


if __name__ == "__main__":
    main()
