#!/usr/bin/env python3
"""Reference Porter stemmer used to generate tests/data/porter_vectors.tsv.

Independent of the C++ implementation: table-driven, operates on Python
strings. Implements the classic algorithm with the standard revisions
(bli -> ble, logi -> log).

Usage: porter_oracle.py < words.txt > vectors.tsv
"""
import sys

VOWELS = set("aeiou")


def is_cons(w, i):
    c = w[i]
    if c in VOWELS:
        return False
    if c == "y":
        return True if i == 0 else not is_cons(w, i - 1)
    return True


def measure(stem):
    """Number of VC sequences in stem."""
    forms = "".join("C" if is_cons(stem, i) else "V" for i in range(len(stem)))
    # collapse runs; what remains after stripping the optional leading C run
    # and trailing V run is an alternating VCVC...VC string
    collapsed = []
    for ch in forms:
        if not collapsed or collapsed[-1] != ch:
            collapsed.append(ch)
    s = "".join(collapsed)
    if s.startswith("C"):
        s = s[1:]
    if s.endswith("V"):
        s = s[:-1]
    return len(s) // 2


def has_vowel(stem):
    return any(not is_cons(stem, i) for i in range(len(stem)))


def ends_double_cons(w):
    return len(w) >= 2 and w[-1] == w[-2] and is_cons(w, len(w) - 1)


def cvc(w):
    if len(w) < 3:
        return False
    i = len(w) - 1
    if not is_cons(w, i) or is_cons(w, i - 1) or not is_cons(w, i - 2):
        return False
    return w[-1] not in "wxy"


def step1a(w):
    if w.endswith("sses"):
        return w[:-2]
    if w.endswith("ies"):
        return w[:-3] + "i"
    if w.endswith("ss"):
        return w
    if w.endswith("s"):
        return w[:-1]
    return w


def step1b(w):
    if w.endswith("eed"):
        if measure(w[:-3]) > 0:
            return w[:-1]
        return w
    flag = False
    if w.endswith("ed") and has_vowel(w[:-2]):
        w = w[:-2]
        flag = True
    elif w.endswith("ing") and has_vowel(w[:-3]):
        w = w[:-3]
        flag = True
    if flag:
        if w.endswith(("at", "bl", "iz")):
            return w + "e"
        if ends_double_cons(w) and w[-1] not in "lsz":
            return w[:-1]
        if measure(w) == 1 and cvc(w):
            return w + "e"
    return w


def step1c(w):
    if w.endswith("y") and has_vowel(w[:-1]):
        return w[:-1] + "i"
    return w


STEP2 = [
    ("ational", "ate"), ("tional", "tion"), ("enci", "ence"), ("anci", "ance"),
    ("izer", "ize"), ("bli", "ble"), ("alli", "al"), ("entli", "ent"),
    ("eli", "e"), ("ousli", "ous"), ("ization", "ize"), ("ation", "ate"),
    ("ator", "ate"), ("alism", "al"), ("iveness", "ive"), ("fulness", "ful"),
    ("ousness", "ous"), ("aliti", "al"), ("iviti", "ive"), ("biliti", "ble"),
    ("logi", "log"),
]

STEP3 = [
    ("icate", "ic"), ("ative", ""), ("alize", "al"), ("iciti", "ic"),
    ("ical", "ic"), ("ful", ""), ("ness", ""),
]

STEP4 = [
    "al", "ance", "ence", "er", "ic", "able", "ible", "ant", "ement", "ment",
    "ent", "ion", "ou", "ism", "ate", "iti", "ous", "ive", "ize",
]


def longest_match(w, table):
    """The reference scans by penultimate/last letter, which within each
    letter group is ordered so that the first match wins; emulating it by
    longest-suffix-first within conflicting pairs gives the same result for
    these tables."""
    best = None
    for suf, rep in table:
        if w.endswith(suf):
            if best is None or len(suf) > len(best[0]):
                best = (suf, rep)
    return best


def step2(w):
    hit = longest_match(w, STEP2)
    if hit and measure(w[: -len(hit[0])]) > 0:
        return w[: -len(hit[0])] + hit[1]
    return w


def step3(w):
    hit = longest_match(w, STEP3)
    if hit and measure(w[: -len(hit[0])]) > 0:
        return w[: -len(hit[0])] + hit[1]
    return w


def step4(w):
    best = None
    for suf in STEP4:
        if w.endswith(suf):
            if best is None or len(suf) > len(best):
                best = suf
    if best is None:
        return w
    stem = w[: -len(best)]
    if best == "ion" and not (stem and stem[-1] in "st"):
        return w
    if measure(stem) > 1:
        return stem
    return w


def step5a(w):
    if w.endswith("e"):
        a = measure(w[:-1])
        if a > 1 or (a == 1 and not cvc(w[:-1])):
            return w[:-1]
    return w


def step5b(w):
    if w.endswith("ll") and measure(w[:-1]) > 1:
        return w[:-1]
    return w


def stem(word):
    if len(word) <= 2:
        return word
    w = step1a(word)
    w = step1b(w)
    w = step1c(w)
    w = step2(w)
    w = step3(w)
    w = step4(w)
    w = step5a(w)
    w = step5b(w)
    return w


def main():
    for line in sys.stdin:
        w = line.strip().lower()
        if not w or not w.isalpha() or not w.isascii():
            continue
        print(f"{w}\t{stem(w)}")


if __name__ == "__main__":
    main()
