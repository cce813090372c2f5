"""Exhaustive law enumeration for a recorded buffer file.

Usage: make_golden.py BUFFER CONCLUSION > golden.laws

Prints every probabilistic law concluding in CONCLUSION, in the same line
format and order as `rulegoal mine --conclusion`, with no thresholds. Shares
no code with the C++ learner.
"""

import sys
from fractions import Fraction
from itertools import combinations


def parse_state(text):
    return frozenset(p.strip() for p in text.split(",") if p.strip())


def is_goal(p):
    return p.startswith("G_")


def load(path):
    goals, parent, tuples, seg = {}, {}, [], 0
    fresh = True
    for raw in open(path):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("@goal "):
            name, rest = line[6:].split("=", 1)
            up = None
            if "<" in rest:
                rest, up = rest.split("<")
                up = up.strip()
            goals[name.strip()] = parse_state(rest)
            parent[name.strip()] = up
        elif line == "@segment":
            fresh = True
        else:
            pre, act, post = (x.strip() for x in line.split("|"))
            if fresh and tuples:
                seg += 1
            fresh = False
            tuples.append((parse_state(pre), act, parse_state(post), seg))
    return goals, parent, tuples


def above(g, parent):
    out = []
    while parent.get(g):
        g = parent[g]
        out.append(g)
    return out


def goal_holds(g, t, inclusive, goals, parent, tuples):
    last = t if inclusive else t - 1
    for u in range(0, last + 1):
        if tuples[u][3] != tuples[t][3] or not goals[g] <= tuples[u][2]:
            continue
        reset = any(goals[h] <= tuples[v][2] for v in range(u, last + 1) for h in above(g, parent))
        if not reset:
            return True
    return False


def main():
    path, conclusion = sys.argv[1], parse_state(sys.argv[2])
    goals, parent, tuples = load(path)
    n = len(tuples)
    before = {g: [goal_holds(g, t, False, goals, parent, tuples) for t in range(n)] for g in goals}
    after = {g: [goal_holds(g, t, True, goals, parent, tuples) for t in range(n)] for g in goals}

    def premise_ok(s, t):
        return all(before[p][t] if is_goal(p) else p in tuples[t][0] for p in s)

    def conclusion_ok(t):
        return all(after[p][t] if is_goal(p) else p in tuples[t][2] for p in conclusion)

    def counts(premise, action):
        prm = [t for t in range(n) if tuples[t][1] == action and premise_ok(premise, t)]
        return len(prm), sum(1 for t in prm if conclusion_ok(t))

    def prob(premise, action):
        prm, hit = counts(premise, action)
        return Fraction(hit, prm) if prm else None

    universe = sorted({p for t in tuples for p in t[0]} | set(goals))
    actions = sorted({t[1] for t in tuples})
    found = []
    for action in actions:
        for size in range(1, len(universe) + 1):
            for premise in combinations(universe, size):
                p = prob(premise, action)
                if p is None:
                    continue
                law = True
                for k in range(1, size):
                    for sub in combinations(premise, k):
                        q = prob(sub, action)
                        if q is not None and q >= p:
                            law = False
                            break
                    if not law:
                        break
                if law:
                    found.append((action, list(premise), counts(premise, action)))
    found.sort(key=lambda x: (x[0], x[1]))
    text = ", ".join(sorted(conclusion))
    for action, premise, (prm, hit) in found:
        print(f"{', '.join(premise)}, {action} -> {text}\t{hit / prm:.4f}\t{prm}\t{hit}")


if __name__ == "__main__":
    main()
