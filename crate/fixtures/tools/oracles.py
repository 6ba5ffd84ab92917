#!/usr/bin/env python3
"""Independent reference computations for the fixture set.

Written separately from the Rust code, from the rule descriptions only.
Running this script prints every value the Rust tests freeze as constants.
"""
import json
import math
import re
import sys
from pathlib import Path

FIXTURES = Path(__file__).resolve().parent.parent

# --- linkography -----------------------------------------------------------

FNV_OFFSET = 0xCBF29CE484222325
FNV_PRIME = 0x100000001B3
DIM = 512
EPS = 1e-9


def fnv1a64(data: bytes) -> int:
    h = FNV_OFFSET
    for b in data:
        h ^= b
        h = (h * FNV_PRIME) & 0xFFFFFFFFFFFFFFFF
    return h


def tokenize(text):
    return [t.lower() for t in re.findall(r"[A-Za-z0-9]+", text)]


def embed(text):
    counts = {}
    for tok in tokenize(text):
        b = fnv1a64(tok.encode()) % DIM
        counts[b] = counts.get(b, 0) + 1
    norm = math.sqrt(sum(c * c for c in counts.values()))
    return {b: c / norm for b, c in counts.items()}


def cosine(u, v):
    return sum(w * v.get(b, 0.0) for b, w in u.items())


def split_moves(text):
    # A '.' terminates unless it sits between two digits.
    parts = re.split(r"[!?\n]|(?<!\d)\.|\.(?!\d)", text)
    return [p.strip() for p in parts if re.search(r"[A-Za-z0-9]", p)]


def k_for(n, fraction=0.10):
    return max(1, math.floor(fraction * n + 0.5 + 1e-9))


def linkograph(moves, threshold=0.75, fraction=0.10):
    vecs = [embed(m) for m in moves]
    n = len(moves)
    links = []
    for i in range(n):
        for j in range(i + 1, n):
            if cosine(vecs[i], vecs[j]) > threshold + EPS:
                links.append((i + 1, j + 1))
    fwd = [0] * (n + 1)
    bwd = [0] * (n + 1)
    for i, j in links:
        fwd[i] += 1
        bwd[j] += 1
    k = k_for(n, fraction)

    def top(counts):
        ranked = sorted((-counts[i], i) for i in range(1, n + 1) if counts[i] > 0)
        return sorted(i for _, i in ranked[:k])

    return {"links": links, "k": k, "divergent": top(fwd), "convergent": top(bwd), "fwd": fwd[1:], "bwd": bwd[1:]}


def mentions(move, symbol):
    toks, needle = tokenize(move), tokenize(symbol)
    return bool(needle) and any(toks[i : i + len(needle)] == needle for i in range(len(toks) - len(needle) + 1))


def label(moves, lg, symbol):
    d = any(mentions(moves[i - 1], symbol) for i in lg["divergent"])
    c = any(mentions(moves[i - 1], symbol) for i in lg["convergent"])
    return "BothDC" if d and c else "EitherDC" if d or c else "NeitherDC"


def read_submitted(path):
    rows = []
    for line in Path(path).read_text().splitlines():
        cols = [c.strip() for c in line.split(",")]
        if not cols[0] or cols[0].lower() == "target":
            continue
        rows.append((cols[0], float(cols[1]) if len(cols) > 1 and cols[1] else None))
    return rows


def dc_replay():
    totals = {"BothDC": 0, "EitherDC": 0, "NeitherDC": 0}
    ratings = {"BothDC": [], "EitherDC": [], "NeitherDC": []}
    per = {}
    for p in range(1, 6):
        moves = split_moves((FIXTURES / f"p{p}_transcript.txt").read_text())
        lg = linkograph(moves)
        subs = read_submitted(FIXTURES / f"p{p}_submitted.csv")
        labels = {s: label(moves, lg, s) for s, _ in subs}
        for s, conf in subs:
            totals[labels[s]] += 1
            if conf is not None:
                ratings[labels[s]].append(conf)
        per[f"p{p}"] = {
            "moves": len(moves),
            "k": lg["k"],
            "links": len(lg["links"]),
            "divergent": lg["divergent"],
            "convergent": lg["convergent"],
            "labels": labels,
        }
    summary = {}
    for lab, xs in ratings.items():
        mean = sum(xs) / len(xs) if xs else None
        sd = math.sqrt(sum((x - mean) ** 2 for x in xs) / (len(xs) - 1)) if len(xs) > 1 else None
        summary[lab] = {"n": len(xs), "mean": mean, "sd": sd}
    return {"per_participant": per, "totals": totals, "summary": summary}


# --- ingest / graph --------------------------------------------------------

def links_dedup(path):
    pairs, self_loops, rows = set(), 0, 0
    with open(path) as f:
        next(f)
        for line in f:
            cols = line.split()
            if not cols:
                continue
            rows += 1
            if cols[0] == cols[1]:
                self_loops += 1
                continue
            pairs.add(frozenset(cols[:2]))
    return {"rows": rows, "distinct_pairs": len(pairs), "self_loops": self_loops}


def proteins_in(path_links, path_info):
    ids = set()
    with open(path_links) as f:
        next(f)
        for line in f:
            cols = line.split()
            if cols and cols[0] != cols[1]:
                ids.update(cols[:2])
    with open(path_info) as f:
        next(f)
        ids.update(line.split("\t")[0] for line in f if line.strip())
    return len(ids)


def center_scan(path, center):
    best = {}
    with open(path) as f:
        next(f)
        for line in f:
            a, b, s = line.split()[:3]
            if a == b:
                continue
            if center in (a, b):
                other = b if a == center else a
                best[other] = max(best.get(other, 0), int(s))
    return {"neighbors": len(best), "max_score": max(best.values()), "subgraphs_at_55": math.ceil(len(best) / 55)}


# --- chemistry ---------------------------------------------------------------

def pdb_atoms(path):
    n = 0
    for line in Path(path).read_text().splitlines():
        if line.startswith("END") and not line.startswith("ENDMDL"):
            break
        if line.startswith(("ATOM  ", "HETATM")):
            n += 1
    return n


def sdf_counts(path):
    lines = Path(path).read_text().splitlines()
    return {"atoms": int(lines[3][0:3]), "bonds": int(lines[3][3:6])}


# --- legend ------------------------------------------------------------------

def color(a):
    return "purple" if a > -0.5 else "orange" if a >= -2 else "pink"


def affinity_colors(path):
    out = {}
    for line in Path(path).read_text().splitlines()[1:]:
        sym, a = line.split("\t")
        out[sym] = color(float(a))
    return out


def main():
    values = {
        "p1_move_count": len(split_moves((FIXTURES / "p1_transcript.txt").read_text())),
        "dc_replay": dc_replay(),
        "neighborhood_links": links_dedup(FIXTURES / "mapt_neighborhood.links.tsv"),
        "neighborhood_proteins": proteins_in(
            FIXTURES / "mapt_neighborhood.links.tsv", FIXTURES / "mapt_neighborhood.info.tsv"
        ),
        "neighborhood_center": center_scan(FIXTURES / "mapt_neighborhood.links.tsv", "9606.ENSP00000340820"),
        "network_links": links_dedup(FIXTURES / "mapt_network.links.tsv"),
        "network_center": center_scan(FIXTURES / "mapt_network.links.tsv", "9606.ENSP00000340820"),
        "pdb_atoms": pdb_atoms(FIXTURES / "8p34_fragment.pdb"),
        "sdf_counts": sdf_counts(FIXTURES / "roscovitine.sdf"),
        "affinity_colors": affinity_colors(FIXTURES / "affinities_20.tsv"),
        "fnv": {t: fnv1a64(t.encode()) for t in ["", "a", "mapt", "cdk5"]},
    }
    json.dump(values, sys.stdout, indent=1, sort_keys=True)
    print()


if __name__ == "__main__":
    main()
