# Copyright 2026 The Stegocoder Authors. All Rights Reserved.
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

"""Writes a synthetic English-like corpus, one multi-sentence document per line.

The grammar is small but its lexicon is large enough (several hundred word
types) for top-k truncation at k = 300 and for per-word entropies of a few
bits, which is the regime the evaluation sweeps cover.
"""

import argparse
import random

NAMES = """Anna Ben Clara David Emma Felix Greta Hugo Iris Jonas Kira Leo Mia Nora
Oscar Paula Quentin Rosa Simon Tara Ulla Victor Wanda Xavier Yara Zeno Mara
Lukas Ines Elias""".split()

NOUNS = """dog cat horse bird fox wolf bear rabbit mouse owl farmer baker teacher
doctor sailor soldier king queen child girl boy woman man stranger merchant
painter singer hunter fisher miller tailor river forest mountain village city
castle garden house tower bridge road field lake sea island valley hill door
window table chair book letter map key lamp coin ring sword shield basket
bottle cup bread apple cake fish soup wine tea milk stone tree flower leaf
boat ship cart wagon train bell clock song story dream secret storm rain snow
wind sun moon star cloud fire shadow light night morning evening winter summer
autumn spring market church school inn mill farm barn well gate wall roof
garden path box bag coat hat boot glove candle mirror picture""".split()

VERBS_T = """saw found took gave opened closed watched followed carried painted
bought sold lost kept broke built visited crossed climbed left reached found
heard called helped asked told met loved feared hid showed brought pulled
pushed cleaned filled emptied counted chased caught greeted remembered
forgot""".split()

VERBS_I = """slept laughed waited smiled cried sang danced walked ran jumped
rested listened whispered shouted wandered returned arrived disappeared
stayed worked prayed trembled sighed""".split()

ADJECTIVES = """old young small big tall quiet loud dark bright cold warm happy
sad tired hungry brave clever kind strange gentle wild proud poor rich lonely
busy empty heavy light green red blue golden silver white black broken hidden
ancient narrow wide deep soft sharp sweet bitter famous secret careful
curious""".split()

ADVERBS = """slowly quickly quietly suddenly carefully gladly softly loudly
finally often never always again soon early late""".split()

PLACES_PREP = "in near behind beside under across through beyond above".split()
TIME_PHRASES = ["that morning", "that night", "in the evening", "at dawn",
                "after the storm", "before winter", "during the feast",
                "on the next day", "at noon", "in the spring", "long ago",
                "one day", "later"]
CONNECTIVES = ["and then", "but", "so", "because", "while", "and"]
OPENINGS = ["Once upon a time", "Long ago", "One day", "In the old days",
            "Many years ago", "Early one morning"]
SAY = ["said", "asked", "whispered", "replied", "shouted"]
PRONOUNS = ["he", "she", "they"]
QUOTES = ["come with me", "look at this", "we must go", "listen to me",
          "do not be afraid", "where is the key", "it is late",
          "I know the way", "help me please", "this is my home"]


class Generator:

    def __init__(self, seed):
        self.rng = random.Random(seed)

    def pick(self, items, skew=1.3):
        # Zipf-like preference for earlier entries.
        weights = [1.0 / (i + 1) ** skew for i in range(len(items))]
        return self.rng.choices(items, weights)[0]

    def noun_phrase(self):
        r = self.rng.random()
        if r < 0.15:
            return self.pick(NAMES)
        det = self.pick(["the", "a", "the", "his", "her", "their", "an old",
                         "every", "one"], 0.8)
        words = [det]
        if self.rng.random() < 0.45:
            words.append(self.pick(ADJECTIVES, 0.9))
        words.append(self.pick(NOUNS, 1.0))
        if self.rng.random() < 0.12:
            words += [self.pick(PLACES_PREP), "the", self.pick(NOUNS, 1.0)]
        return " ".join(words)

    def clause(self):
        subject = self.noun_phrase()
        r = self.rng.random()
        if r < 0.55:
            body = [subject, self.pick(VERBS_T, 0.9), self.noun_phrase()]
        elif r < 0.8:
            body = [subject, self.pick(VERBS_I, 0.9)]
            if self.rng.random() < 0.5:
                body += [self.pick(PLACES_PREP), "the", self.pick(NOUNS, 1.0)]
        else:
            body = [subject, "was", self.pick(ADJECTIVES, 0.9)]
        if self.rng.random() < 0.25:
            body.append(self.pick(ADVERBS))
        return " ".join(body)

    def sentence(self, first):
        r = self.rng.random()
        if first:
            parts = [self.pick(OPENINGS, 0.6), ",", self.clause()]
        elif r < 0.12:
            parts = ["\"", self.rng.choice(QUOTES), "\"", ",",
                     self.rng.choice(SAY), self.pick(NAMES)]
        elif r < 0.3:
            parts = [self.pick(TIME_PHRASES), ",", self.clause()]
        elif r < 0.5:
            parts = [self.clause(), self.pick(CONNECTIVES), self.clause()]
        else:
            parts = [self.clause()]
        text = " ".join(parts)
        text = text[0].upper() + text[1:]
        end = "." if self.rng.random() < 0.9 else self.rng.choice(["!", "?"])
        return text + " " + end

    def document(self):
        n = self.rng.randint(4, 8)
        return " ".join(self.sentence(i == 0) for i in range(n))


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--documents", type=int, default=4000)
    parser.add_argument("--seed", type=int, default=20260101)
    parser.add_argument("--out", default="data/corpus.txt")
    args = parser.parse_args()
    gen = Generator(args.seed)
    with open(args.out, "w", encoding="utf-8") as out:
        for _ in range(args.documents):
            out.write(gen.document() + "\n")


if __name__ == "__main__":
    main()
