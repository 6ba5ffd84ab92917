#!/usr/bin/env python3
"""Build the five-participant replay fixture (transcripts + submissions).

Each transcript has one cluster of near-identical "comparison" moves spread
through otherwise unrelated filler moves. Early cluster moves collect the
most forward links (divergent), late ones the most backward links
(convergent). Targets are placed in cluster moves according to the plan
below, then the result is checked with the brute-force labeler in
oracles.py; construction fails loudly if any label disagrees with the plan.

Writes fixtures/p{1..5}_transcript.txt and fixtures/p{1..5}_submitted.csv.
"""
import random
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent))
import oracles  # noqa: E402

OUT = Path(__file__).resolve().parent.parent

# moves, both, either-divergent, either-convergent, neither
PLAN = {
    1: (52, ["BRSK1", "GSK3B"], ["CDK5"], ["MARK2"], ["FYN", "PIN1", "TTBK1", "DYRK1A", "APP", "SNCA"]),
    2: (45, ["BRSK1", "CDK5", "MARK4"], ["GSK3B"], ["TUBB"], ["MARK1", "MARK3", "CSNK1D", "PPP2CA", "PSEN1", "MAPK1", "LRRK2"]),
    3: (43, ["GSK3B"], ["BRSK2"], ["FYN"], ["PIN1", "APOE", "BIN1", "TREM2"]),
    4: (40, ["CDK5", "DYRK1A"], ["TTBK1"], ["BRSK1"], ["MARK2", "CAMK2A", "PRKACA", "SYK", "ABL1", "CLU", "HSPA8"]),
    5: (38, ["MARK2"], ["CDK5R1", "BRSK1"], [], ["GSK3B", "TUBA1A", "STUB1", "FKBP5"]),
}

CORES = {
    1: "Comparing the pathway score against the docking affinity for this kinase candidate right now",
    2: "Let me line up pathway evidence with binding affinity and interaction strength for",
    3: "Cross checking literature support plus docking energy before shortlisting candidate",
    4: "Weighing therapeutic relevance together with predicted docking pose quality regarding",
    5: "Ranking candidates by combined interaction strength pathway score and affinity including",
}

FILLERS = [
    "Hmm the legend colors took a while to load",
    "I wonder whether the slider skips any proteins",
    "Okay switching over to subgraph {n}",
    "That purple node looks promising though",
    "Maybe {s} later, not convinced yet",
    "The explanation panel cites three papers here",
    "Thick edges mostly sit near the middle",
    "I would normally ask a biologist about {s}",
    "Scrolling back up to reread the abstract",
    "Not sure what gray edges imply biologically",
    "Interesting that {s} shows up again",
    "Turning off the docking layer for clarity",
    "This view feels crowded with sixty nodes",
    "Let me zoom into the lower left cluster",
    "Pink nodes everywhere in this region",
    "The pose viewer rotates smoothly enough",
    "I remember reading something about {s} years ago",
    "Skipping the phosphatases for now",
    "Red edges cluster around the kinases",
    "Honestly the references seem a bit dated",
    "Going back one subgraph to double check",
    "Where did my previous selection go",
    "Bookmark mode shows fewer items than expected",
    "Might be worth a wet lab follow up",
    "The description mentions microtubule binding",
    "Orange means moderate docking potential right",
    "Checking whether {s} has structural data",
    "A quick sanity check on tier thresholds",
    "Nothing stands out in subgraph {n} honestly",
    "The interaction list feels endless",
    "I should probably take notes on {s}",
    "Hovering shows combined scores nicely",
    "Too many uncharacterized proteins down here",
    "Docking took longer than the other layers",
    "That excerpt directly supports my hunch",
    "Unclear evidence, moving along",
    "Filtering bookmarks by the first subgraph",
    "Reopening the detail panel once more",
    "Medium thickness edges dominate this slice",
    "Possibly an off target concern with {s}",
    "Roscovitine was designed against cyclin kinases",
    "Typing a quick reminder about tangles",
    "Pausing to think about blood brain barrier issues",
    "Selectivity matters more than raw affinity",
    "I trust the interaction database reasonably well",
    "These synthetic names mean nothing to me",
    "Alright, wrapping up this pass",
    "Glancing at chaperone partners briefly",
]


def build(p, seed):
    n_moves, both, either_d, either_c, neither = PLAN[p]
    rng = random.Random(seed * 1000 + p)
    k = oracles.k_for(n_moves)
    m = 2 * k + 2
    # Symbol slots per cluster move, indexed by rank within the cluster.
    slots = [[] for _ in range(m)]
    d_ranks = list(range(k))
    c_ranks = list(range(m - k, m))
    rng.shuffle(d_ranks)
    rng.shuffle(c_ranks)
    for i, s in enumerate(both + either_d):
        slots[d_ranks[i % k]].append(s)
    for i, s in enumerate(both + either_c):
        slots[c_ranks[i % k]].append(s)
    middle = [s for s in neither if rng.random() < 0.5]
    for i, s in enumerate(middle[:2]):
        slots[k + i].append(s)

    cluster = []
    for syms in slots:
        tail = " and ".join(syms) if syms else "the remaining options"
        cluster.append(f"{CORES[p]} {tail}.")

    fillers = rng.sample(FILLERS, n_moves - m)
    filler_syms = [s for s in neither if s not in middle[:2]] + rng.sample(neither, min(2, len(neither)))
    filled = []
    for t in fillers:
        if "{s}" in t and filler_syms:
            t = t.replace("{s}", filler_syms.pop(0))
        elif "{s}" in t:
            t = t.replace("{s}", "that one")
        t = t.replace("{n}", ["two", "three", "four", "five"][rng.randrange(4)])
        filled.append(t + rng.choice([".", ".", "!", "?"]) if not t.endswith((".", "!", "?")) else t)

    positions = sorted(rng.sample(range(n_moves), m))
    moves, ci, fi = [], 0, 0
    for i in range(n_moves):
        if ci < m and positions[ci] == i:
            moves.append(cluster[ci])
            ci += 1
        else:
            moves.append(filled[fi])
            fi += 1
    submitted = both + either_d + either_c + neither
    rng.shuffle(submitted)
    confidence = {s: rng.randint(1, 7) for s in submitted}
    return moves, submitted, confidence


def check(p, moves, submitted):
    n_moves, both, either_d, either_c, neither = PLAN[p]
    assert len(moves) == n_moves, (p, len(moves))
    text = "\n".join(moves) + "\n"
    assert oracles.split_moves(text) == [m.rstrip(".!?") for m in moves], f"p{p}: moves do not survive sentence splitting"
    lg = oracles.linkograph(moves)
    expected = {s: "BothDC" for s in both}
    expected.update({s: "EitherDC" for s in either_d + either_c})
    expected.update({s: "NeitherDC" for s in neither})
    got = {s: oracles.label(moves, lg, s) for s in submitted}
    return got == expected, lg


def main():
    seed = int(sys.argv[1]) if len(sys.argv) > 1 else 7
    for p in PLAN:
        for attempt in range(200):
            moves, submitted, confidence = build(p, seed + attempt)
            ok, lg = check(p, moves, submitted)
            if ok:
                break
        else:
            raise SystemExit(f"p{p}: no layout satisfied the plan")
        (OUT / f"p{p}_transcript.txt").write_text("\n".join(moves) + "\n")
        rows = ["target,confidence"] + [f"{s},{confidence[s]}" for s in submitted]
        (OUT / f"p{p}_submitted.csv").write_text("\n".join(rows) + "\n")
        print(f"p{p}: {len(moves)} moves, k={lg['k']}, D={lg['divergent']}, C={lg['convergent']}, attempt {attempt}")


if __name__ == "__main__":
    main()
