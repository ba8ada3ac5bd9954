#!/usr/bin/env python3
"""Independent reference for the semantic-affinity spreads.

Reads dataset files (one concept per line, variants split on '|') and
embedding TSVs (word<TAB>comma-separated floats), recomputes both spreads
under both metrics with numpy, and prints one value per line:

    intra_cosine inter_cosine sa_cosine intra_euclidean inter_euclidean sa_euclidean

Usage:
    oracle_sa.py LANG1 DATASET1 TSV1 LANG2 DATASET2 TSV2 [...]
"""
import itertools
import sys

import numpy as np


def read_dataset(path):
    concepts = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.rstrip("\r\n")
            variants = [v.strip() for v in line.split("|")]
            assert all(variants), f"empty variant in {path}"
            concepts.append(variants)
    return concepts


def read_tsv(path):
    table = {}
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.rstrip("\r\n")
            if not line:
                continue
            word, vec = line.split("\t")
            table[word] = np.array([float(x) for x in vec.split(",")], dtype=np.float32)
    # distances in double precision on float32 inputs, matching the engine
    return {w: v.astype(np.float64) for w, v in table.items()}


def cos_dist(u, v):
    return 1.0 - float(np.dot(u, v)) / (float(np.linalg.norm(u)) * float(np.linalg.norm(v)))


def euc_dist(u, v):
    return float(np.linalg.norm(u - v))


def intra(languages):
    per_lang = {"cos": [], "euc": []}
    for concepts, table in languages:
        vocab = []
        seen = set()
        for variants in concepts:
            for w in variants:
                if w not in seen:
                    seen.add(w)
                    vocab.append(w)
        cos_acc, euc_acc, n = 0.0, 0.0, 0
        for a, b in itertools.combinations(vocab, 2):
            cos_acc += cos_dist(table[a], table[b])
            euc_acc += euc_dist(table[a], table[b]) ** 2
            n += 1
        per_lang["cos"].append(cos_acc / n)
        per_lang["euc"].append(np.sqrt(euc_acc / n))
    return (float(np.mean(per_lang["cos"])), float(np.mean(per_lang["euc"])))


def inter(languages):
    n_concepts = len(languages[0][0])
    cos_tuples, euc_tuples = [], []
    for c in range(n_concepts):
        variant_lists = [concepts[c] for concepts, _ in languages]
        for combo in itertools.product(*variant_lists):
            cos_acc, euc_acc, pairs = 0.0, 0.0, 0
            for i, j in itertools.combinations(range(len(languages)), 2):
                u = languages[i][1][combo[i]]
                v = languages[j][1][combo[j]]
                cos_acc += cos_dist(u, v)
                euc_acc += euc_dist(u, v) ** 2
                pairs += 1
            cos_tuples.append(cos_acc / pairs)
            euc_tuples.append(np.sqrt(euc_acc / pairs))
    return (float(np.mean(cos_tuples)), float(np.mean(euc_tuples)))


def main(argv):
    args = argv[1:]
    assert args and len(args) % 3 == 0, __doc__
    languages = []
    for k in range(0, len(args), 3):
        _lang, dataset_path, tsv_path = args[k : k + 3]
        languages.append((read_dataset(dataset_path), read_tsv(tsv_path)))
    counts = {len(c) for c, _ in languages}
    assert len(counts) == 1, "datasets are misaligned"

    intra_cos, intra_euc = intra(languages)
    inter_cos, inter_euc = inter(languages)
    sa_cos = intra_cos / (intra_cos + inter_cos)
    sa_euc = intra_euc / (intra_euc + inter_euc)
    for value in (intra_cos, inter_cos, sa_cos, intra_euc, inter_euc, sa_euc):
        print(f"{value:.15g}")


if __name__ == "__main__":
    main(sys.argv)
