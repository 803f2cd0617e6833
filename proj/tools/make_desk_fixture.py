#!/usr/bin/env python3
# Copyright 2026 The veridecode Authors.
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

"""Writes the desk-scale encyclopedia used by the end-to-end tests.

Every entity gets one paragraph in the training corpus, one knowledge-base
document, an `asserts` fact per attribute sentence and a `contradicts` fact
for every other value the attribute can take. Prefixes are split into a
validation and a test file with no entity in common.
"""

import argparse
import json
import random
from pathlib import Path

SYLLABLES = ["al", "ber", "cor", "dan", "el", "fio", "gar", "hal", "ist", "jor", "kel", "lun",
             "mar", "nor", "ost", "pel", "quin", "ras", "sol", "tor", "ul", "ven", "wen", "yor",
             "zan", "bri", "cal", "dro", "fen", "gil"]

NATIONALITIES = ["French", "Italian", "Danish", "Austrian", "Portuguese", "Norwegian"]
OCCUPATIONS = ["painter", "composer", "poet", "architect", "sculptor", "novelist", "chemist",
               "astronomer"]

# name, sentence template, values; earlier values are more common.
ATTRIBUTES = [
    ("city", "{p} was born in {v} .",
     ["Lyon", "Verona", "Aarhus", "Graz", "Porto", "Bergen", "Nantes", "Genoa"]),
    ("school", "{p} studied at the {v} academy .",
     ["royal", "northern", "central", "coastal", "imperial"]),
    ("club", "{p} was a member of the {v} society .",
     ["artists", "lantern", "harbor", "meridian"]),
    ("prize", "{p} received the {v} medal .",
     ["silver", "gold", "bronze", "laurel", "cedar", "ivory"]),
    ("region", "{p} spent many years in {v} .",
     ["Provence", "Tuscany", "Jutland", "Tyrol", "Algarve", "Telemark"]),
    ("year", "{p} died in {v} .",
     ["1921", "1934", "1948", "1952", "1967", "1973", "1989", "1995"]),
]

FILLERS = [
    "{p} is remembered for {q} early work .",
    "{p} rarely spoke about {q} private life .",
    "{p} kept a detailed journal for many years .",
]


def zipf_weights(n, s):
    return [1.0 / (i + 1) ** s for i in range(n)]


def make_names(rng, count):
    names = set()
    out = []
    while len(out) < count:
        first = (rng.choice(SYLLABLES) + rng.choice(SYLLABLES)).capitalize()
        last = (rng.choice(SYLLABLES) + rng.choice(SYLLABLES) + rng.choice(SYLLABLES)).capitalize()
        if first in names or last in names or first == last:
            continue
        names.update([first, last])
        out.append(f"{first} {last}")
    return out


def build(args):
    rng = random.Random(args.seed)
    titles = make_names(rng, args.entities)
    entities = []
    for i, title in enumerate(titles):
        female = rng.random() < args.female
        e = {
            "id": f"e{i:03d}",
            "title": title,
            "pronoun": "She" if female else "He",
            "possessive": "her" if female else "his",
            "nationality": rng.choices(NATIONALITIES, zipf_weights(len(NATIONALITIES), 0.8))[0],
            "occupation": rng.choices(OCCUPATIONS, zipf_weights(len(OCCUPATIONS), 0.8))[0],
            "values": {},
        }
        for (name, _, values), skew in zip(ATTRIBUTES, args.skew):
            e["values"][name] = rng.choices(values, zipf_weights(len(values), skew))[0]
        entities.append(e)

    corpus, docs, facts, prefixes = [], [], [], []
    for e in entities:
        first = f"{e['title']} is a {e['nationality']} {e['occupation']} ."
        sentences = []
        order = list(range(len(ATTRIBUTES)))
        if args.shuffle:
            rng.shuffle(order)
        for a in order:
            name, template, _ = ATTRIBUTES[a]
            sentences.append(template.format(p=e["pronoun"], v=e["values"][name]))
        for f in rng.sample(FILLERS, args.fillers):
            sentences.insert(rng.randrange(len(sentences) + 1),
                             f.format(p=e["pronoun"], q=e["possessive"]))
        body = " ".join(sentences)
        corpus.append(f"{e['title']} . {first} {body}")
        doc_id = "doc_" + e["id"]
        docs.append({"doc_id": doc_id, "text": f"{first} {body}"})
        for name, template, values in ATTRIBUTES:
            for v in values:
                facts.append({
                    "fact_id": f"{e['id']}_{name}_{values.index(v)}",
                    "text": template.format(p=e["title"], v=v),
                    "polarity": "asserts" if v == e["values"][name] else "contradicts",
                    "source_doc_id": doc_id,
                })
        prefixes.append({
            "id": e["id"],
            "title": e["title"],
            "first_sentence": first.replace(" .", "."),
            "reference": body,
            "doc_id": doc_id,
        })

    order = list(range(len(prefixes)))
    rng.shuffle(order)
    valid = sorted(order[:args.validation])
    test = sorted(order[args.validation:args.validation + args.test])
    return corpus, docs, facts, [prefixes[i] for i in valid], [prefixes[i] for i in test]


def write_jsonl(path, rows):
    with open(path, "w", encoding="utf-8") as out:
        for row in rows:
            out.write(json.dumps(row, ensure_ascii=False) + "\n")


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default=str(Path(__file__).resolve().parent.parent / "data/desk"))
    parser.add_argument("--seed", type=int, default=7)
    parser.add_argument("--entities", type=int, default=100)
    parser.add_argument("--validation", type=int, default=30)
    parser.add_argument("--test", type=int, default=40)
    # One Zipf exponent per attribute, in ATTRIBUTES order.
    parser.add_argument("--skew", type=float, nargs=len(ATTRIBUTES),
                        default=[0.8, 1.2, 2.5, 1.5, 2.0, 0.5])
    parser.add_argument("--female", type=float, default=0.4)
    parser.add_argument("--fillers", type=int, default=2)
    parser.add_argument("--shuffle", action=argparse.BooleanOptionalAction, default=True)
    args = parser.parse_args()

    corpus, docs, facts, valid, test = build(args)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    (out / "corpus.txt").write_text("\n".join(corpus) + "\n", encoding="utf-8")
    write_jsonl(out / "kb_docs.jsonl", docs)
    write_jsonl(out / "kb_facts.jsonl", facts)
    write_jsonl(out / "prefixes_valid.jsonl", valid)
    write_jsonl(out / "prefixes_test.jsonl", test)


if __name__ == "__main__":
    main()
