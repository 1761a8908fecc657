#!/usr/bin/env python3
# Copyright 2026 The eamt Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Regenerates the checked-in test fixtures.

Run from anywhere: python3 tests/testdata/gen_fixtures.py
Output is deterministic; a clean rerun must leave `git status` unchanged.
"""

import json
import pathlib
import random

HERE = pathlib.Path(__file__).resolve().parent
FETCHED_AT = "2026-01-01T00:00:00Z"
LANGS = ["ar", "de", "es", "fr", "it", "ja", "ko", "th", "tr", "zh"]


def dump(obj):
    return json.dumps(obj, ensure_ascii=False, separators=(",", ":"))


def write(rel, text):
    path = HERE / rel
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8", newline="\n")


def lexicon_text(entries):
    lines = [dump({"format": "eamt-lexicon", "version": 1})]
    for qid, names in entries:
        lines.append(dump({"qid": qid, "names": names, "fetched_at": FETCHED_AT,
                           "source": "file"}))
    lines.append(dump({"end": True, "count": len(entries)}))
    return "\n".join(lines) + "\n"


# Entity-type table: per type, total unique entities and how many of them
# have a name in each language.
ENTITY_TYPES = [
    ("PERSON", 1507, [908, 1083, 1081, 1114, 1069, 1021, 941, 673, 933, 1014]),
    ("ORG", 1082, [648, 785, 788, 788, 767, 745, 680, 470, 660, 734]),
    ("GPE", 522, [291, 360, 363, 369, 351, 333, 307, 201, 292, 330]),
    ("DATE", 379, [221, 264, 269, 268, 263, 246, 229, 160, 231, 248]),
    ("WORK_OF_ART", 282, [171, 209, 205, 214, 207, 194, 175, 122, 178, 193]),
    ("EVENT", 187, [105, 135, 137, 138, 134, 121, 105, 73, 108, 120]),
    ("LOC", 183, [102, 127, 128, 128, 125, 118, 101, 69, 105, 121]),
    ("NORP", 169, [103, 124, 124, 125, 122, 116, 105, 67, 98, 116]),
    ("FAC", 135, [78, 94, 95, 96, 94, 88, 80, 43, 80, 87]),
    ("PRODUCT", 51, [37, 42, 43, 43, 42, 40, 37, 28, 37, 39]),
    ("LAW", 31, [21, 23, 24, 23, 23, 22, 21, 16, 22, 22]),
    ("QUANTITY", 28, [14, 19, 19, 20, 20, 18, 14, 10, 13, 18]),
    ("MONEY", 15, [5, 8, 8, 8, 8, 6, 5, 5, 6, 7]),
    ("TIME", 10, [5, 7, 7, 7, 7, 7, 4, 3, 5, 6]),
    ("PERCENT", 4, [1, 2, 3, 3, 2, 3, 2, 1, 1, 2]),
    ("LANGUAGE", 2, [1, 2, 2, 2, 2, 1, 1, 1, 1, 1]),
]


def gen_entity_types():
    rng = random.Random(4587)
    mentions = ["# QID\tentity type"]
    entries = []
    next_qid = 100000
    for etype, total, per_lang in ENTITY_TYPES:
        qids = [f"Q{next_qid + i}" for i in range(total)]
        next_qid += total
        named = {lang: set(rng.sample(range(total), count))
                 for lang, count in zip(LANGS, per_lang)}
        for i, qid in enumerate(qids):
            mentions.append(f"{qid}\t{etype}")
            names = {}
            for lang in LANGS:
                # Fetched but unnamed languages are kept as empty name sets.
                names[lang] = {"label": f"e{i}"} if i in named[lang] else {}
            entries.append((qid, names))
    write("entity_types/mentions.tsv", "\n".join(mentions) + "\n")
    write("entity_types/lexicon.jsonl", lexicon_text(entries))


def gen_italian_validation():
    rng = random.Random(730)
    subjects = ["Dante Alighieri", "Leonardo da Vinci", "the Colosseum", "Galileo Galilei",
                "the Uffizi Gallery", "Giuseppe Verdi", "Mount Etna", "the Vatican Museums"]
    verbs = ["is discussed in", "appears in", "is the subject of", "is mentioned by"]
    objects = ["a documentary", "a travel guide", "an encyclopedia entry", "a school textbook"]
    lines = []
    for i in range(730):
        s = rng.randrange(len(subjects))
        subject = subjects[s]
        source = f"{subject} {rng.choice(verbs)} {rng.choice(objects)} (#{i})."
        qid = f"Q{5000 + s}"
        lines.append(dump({
            "id": f"it-val-{i:04d}", "source": source, "source_locale": "en",
            "target_locale": "it", "entities": [qid],
            "targets": [{"translation": f"{subject} compare in un testo (#{i}).",
                         "mention": subject, "entity": qid}],
        }))
    write("splits/it_validation.jsonl", "\n".join(lines) + "\n")


# name in target language, aliases, English label
PIPELINE_ENTITIES = {
    "Q42": ("Douglas Adams", [], "Douglas Adams"),
    "Q3107329": ("Per Anhalter durch die Galaxis", ["Anhalter durch die Galaxis"],
                 "The Hitchhiker's Guide to the Galaxy"),
    "Q90": ("Paris", [], "Paris"),
    "Q64": ("Berlin", [], "Berlin"),
    "Q1490": ("Tokio", [], "Tokyo"),
    "Q7186": ("Marie Curie", [], "Marie Curie"),
    "Q12418": ("Mona Lisa", ["La Joconde"], "Mona Lisa"),
    "Q243": ("tour Eiffel", [], "Eiffel Tower"),
    "Q8409": ("Alexandre le Grand", [], "Alexander the Great"),
    "Q17": ("日本", ["日本国"], "Japan"),
    "Q39231": ("富士山", [], "Mount Fuji"),
    "Q5582": ("フィンセント・ファン・ゴッホ", ["ゴッホ"], "Vincent van Gogh"),
    "Q8646": ("香港", [], "Hong Kong"),
    "Q8684": ("서울", [], "Seoul"),
    "Q884": ("대한민국", ["한국"], "South Korea"),
    "Q484523": ("경복궁", [], "Gyeongbokgung"),
    "Q1339": ("요한 제바스티안 바흐", ["바흐"], "Johann Sebastian Bach"),
}

# id, locale, source, entities, reference, hypothesis or None (failed)
PIPELINE = [
    ("p-de-01", "de", "Douglas Adams wrote The Hitchhiker's Guide to the Galaxy.",
     ["Q42", "Q3107329"], "Douglas Adams schrieb Per Anhalter durch die Galaxis.",
     "Douglas Adams schrieb Per Anhalter durch die Galaxis."),
    ("p-de-02", "de", "Berlin is larger than Paris.", ["Q64", "Q90"],
     "Berlin ist größer als Paris.", "Berlin ist größer als Paris."),
    ("p-de-03", "de", "Marie Curie was born in Warsaw.", ["Q7186"],
     "Marie Curie wurde in Warschau geboren.", "Marie Curie kam in Warschau zur Welt."),
    ("p-de-04", "de", "Is the Hitchhiker's Guide a radio play?", ["Q3107329"],
     "Ist Per Anhalter durch die Galaxis ein Hörspiel?",
     "Ist Anhalter durch die Galaxis ein Hörspiel?"),
    ("p-de-05", "de", "How far is Tokyo from Berlin?", ["Q1490", "Q64"],
     "Wie weit ist Tokio von Berlin entfernt?", "Wie weit ist Tokyo von Berlin entfernt?"),
    ("p-fr-01", "fr", "Where is the Mona Lisa displayed?", ["Q12418"],
     "Où la Joconde est-elle exposée ?", "Où la Joconde est-elle exposée ?"),
    ("p-fr-02", "fr", "When was the Eiffel Tower built?", ["Q243"],
     "Quand la tour Eiffel a-t-elle été construite ?",
     "Quand la Tour Eiffel a-t-elle été construite ?"),
    ("p-fr-03", "fr", "Alexander the Great founded many cities.", ["Q8409"],
     "Alexandre le Grand a fondé de nombreuses villes.",
     "Alexander the Great founded many cities."),
    ("p-fr-04", "fr", "Marie Curie lived in Paris.", ["Q7186", "Q90"],
     "Marie Curie a vécu à Paris.", None),
    ("p-fr-05", "fr", "Douglas Adams visited Paris.", ["Q42", "Q90"],
     "Douglas Adams a visité Paris.", "Douglas Adams a visité la capitale."),
    ("p-ja-01", "ja", "Mount Fuji is the highest mountain in Japan.", ["Q39231", "Q17"],
     "富士山は日本で一番高い山です。", "富士山は日本で最も高い山です。"),
    ("p-ja-02", "ja", "Where did Vincent van Gogh live?", ["Q5582"],
     "フィンセント・ファン・ゴッホはどこに住んでいましたか？",
     "ゴッホはどこに住んでいましたか？"),
    ("p-ja-03", "ja", "Tokyo is the capital of Japan.", ["Q1490", "Q17"],
     "東京は日本の首都です。", "東京は日本の首都です。"),
    ("p-ja-04", "ja", "Is Hong Kong far from Japan?", ["Q8646", "Q17"],
     "香港は日本から遠いですか？", "ホンコンは日本国から遠いですか？"),
    ("p-ja-05", "ja", "Marie Curie won two Nobel prizes.", ["Q7186"],
     "マリ・キュリーはノーベル賞を二度受賞しました。",
     "マリー・キュリーはノーベル賞を二回受賞した。"),
    ("p-ko-01", "ko", "Seoul is the capital of South Korea.", ["Q8684", "Q884"],
     "서울은 대한민국의 수도입니다.", "서울은 한국의 수도입니다."),
    ("p-ko-02", "ko", "Gyeongbokgung is in Seoul.", ["Q484523", "Q8684"],
     "경복궁은 서울에 있습니다.", "경복궁은 서울에 있습니다."),
    ("p-ko-03", "ko", "Johann Sebastian Bach composed many cantatas.", ["Q1339"],
     "요한 제바스티안 바흐는 많은 칸타타를 작곡했습니다.", "바흐는 많은 칸타타를 작곡했다."),
    ("p-ko-04", "ko", "How many people live in South Korea?", ["Q884"],
     "대한민국에는 몇 명이 살고 있습니까?", "How many people live in South Korea?"),
    ("p-ko-05", "ko", "Douglas Adams never visited Seoul.", ["Q42", "Q8684"],
     "더글러스 애덤스는 서울을 방문한 적이 없습니다.",
     "더글라스 아담스는 서울에 가 본 적이 없다."),
]

# Training pairs for few-shot examples; ko has none.
TRAIN = {
    "de": [("The Louvre is in Paris.", "Der Louvre ist in Paris."),
           ("Who painted the Mona Lisa?", "Wer hat die Mona Lisa gemalt?"),
           ("Berlin has many museums.", "Berlin hat viele Museen."),
           ("Japan is an island nation.", "Japan ist ein Inselstaat."),
           ("Bach was a composer.", "Bach war ein Komponist.")],
    "fr": [("The Louvre is in Paris.", "Le Louvre est à Paris."),
           ("Berlin has many museums.", "Berlin compte de nombreux musées."),
           ("Japan is an island nation.", "Le Japon est un pays insulaire."),
           ("Bach was a composer.", "Bach était un compositeur.")],
    "ja": [("The Louvre is in Paris.", "ルーヴル美術館はパリにあります。"),
           ("Berlin has many museums.", "ベルリンには多くの博物館があります。"),
           ("Bach was a composer.", "バッハは作曲家でした。")],
}


def gen_pipeline():
    dataset, replay, lex_langs = [], [], {}
    for iid, loc, source, ents, ref, hyp in PIPELINE:
        targets = [{"translation": ref, "mention": PIPELINE_ENTITIES[q][0], "entity": q}
                   for q in ents if PIPELINE_ENTITIES[q][0] in ref]
        if not targets:
            targets = [{"translation": ref}]
        dataset.append(dump({"id": iid, "source": source, "source_locale": "en",
                             "target_locale": loc, "entities": ents, "targets": targets}))
        pred = {"id": iid, "hypothesis": hyp or "", "backend": "recorded", "latency_ms": 0,
                "attempts": 1}
        if hyp is None:
            pred.update(attempts=3, failed=True, error="HTTP 503 after 3 attempts")
        replay.append(dump(pred))
        for q in ents:
            lex_langs.setdefault(q, set()).add(loc)
    entries = []
    for qid in sorted(lex_langs, key=lambda q: int(q[1:])):
        name, aliases, en = PIPELINE_ENTITIES[qid]
        names = {"en": {"label": en, "aliases": []}}
        for loc in sorted(lex_langs[qid]):
            names[loc] = {"label": name, "aliases": aliases}
        entries.append((qid, names))
    train = []
    for loc, pairs in TRAIN.items():
        for i, (src, tgt) in enumerate(pairs):
            train.append(dump({"id": f"t-{loc}-{i:02d}", "source": src, "source_locale": "en",
                               "target_locale": loc, "entities": [],
                               "targets": [{"translation": tgt}]}))
    write("pipeline/dataset.jsonl", "\n".join(dataset) + "\n")
    write("pipeline/replay.jsonl", "\n".join(replay) + "\n")
    write("pipeline/lexicon.jsonl", lexicon_text(entries))
    write("pipeline/train.jsonl", "\n".join(train) + "\n")


def gen_wikidata():
    q42 = {"entities": {"Q42": {
        "type": "item", "id": "Q42",
        "labels": {"de": {"language": "de", "value": "Douglas Adams"},
                   "en": {"language": "en", "value": "Douglas Adams"}},
        "aliases": {"de": [{"language": "de", "value": "Douglas Noël Adams"},
                           {"language": "de", "value": "Douglas Noel Adams"}],
                    "en": [{"language": "en", "value": "Douglas Noël Adams"}]},
    }}, "success": 1}
    # Has German and English names but nothing in Thai.
    q64 = {"type": "item", "id": "Q64",
           "labels": {"de": {"language": "de", "value": "Berlin"},
                      "en": {"language": "en", "value": "Berlin"}},
           "aliases": {}}
    write("wikidata/Q42.json", json.dumps(q42, ensure_ascii=False, indent=1) + "\n")
    write("wikidata/Q64.json", json.dumps(q64, ensure_ascii=False, indent=1) + "\n")


# Prompt templates as listed with the original system, verbatim (including
# trailing spaces); rendered with str.format, the same single-pass
# substitution the original prompt library performed.
TEMPLATE_1 = """Instruction:
    Translate the following text from english to {tgt}, ensuring that all 
    named-entities are accurately translated with no additional explanations. Use 
    the provided translation examples and translated named-entities (if provided) 
    for consistency. Do not send the English text back in the response, generate 
    only the translation and nothing more.
    Named entities:
    {ne}
    Examples:
    {examples}
    Now generate the {tgt} translation of the following english text: {sentence}"""

TEMPLATE_2 = """Instruction:
    Translate the following text from english to {tgt}, ensuring that all named-
    entities are accurately translated with no additional explanations. Do not send 
    the English text back in the response, generate only the translation and nothing 
    more.
    Now generate the {tgt} translation of the following english text: {sentence}"""


def gen_prompts():
    ne = "\n".join(f"{s} ⇒ {t}" for s, t in [
        ("Douglas Adams", "Douglas Adams"),
        ("The Hitchhiker's Guide to the Galaxy", "Le Guide du voyageur galactique")])
    examples = "\n\n".join(f"english: {s}\nfrench: {t}" for s, t in [
        ("The Louvre is in Paris.", "Le Louvre est à Paris."),
        ("Who painted the Mona Lisa?", "Qui a peint la Joconde ?")])
    sentence = "Who wrote The Hitchhiker's Guide to the Galaxy?"
    write("prompts/t1_hints_examples.txt",
          TEMPLATE_1.format(tgt="french", ne=ne, examples=examples, sentence=sentence))
    write("prompts/t1_empty.txt",
          TEMPLATE_1.format(tgt="german", ne="", examples="",
                            sentence="Where is the Brandenburg Gate?"))
    write("prompts/t2.txt",
          TEMPLATE_2.format(tgt="japanese", sentence="What is the tallest mountain in Japan?"))


if __name__ == "__main__":
    gen_entity_types()
    gen_italian_validation()
    gen_pipeline()
    gen_wikidata()
    gen_prompts()
