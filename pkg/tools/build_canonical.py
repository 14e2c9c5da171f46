"""Regenerate src/femrisk/data/canonical_rulebase.json.

Run from the repository root:  python tools/build_canonical.py
"""
from pathlib import Path

from femrisk.membership import GaussianParams, default_catalogs
from femrisk.rulebase import Rule, RuleBase, RuleTerm, serialize_rulebase, validate_rulebase

OUT = Path(__file__).resolve().parents[1] / "src" / "femrisk" / "data" / "canonical_rulebase.json"

# rule: a, b, sigma_x, sigma_y, peak, degree, impact, weight
GAUSSIAN_TABLE = """
1	2.5	3.2	0.5	0.7	0.9	High	Significant	0.08
2	1.8	2.9	0.6	0.9	0.85	Medium-High	Moderate	0.07
3	3.0	4.1	0.4	0.5	0.92	High	Significant	0.09
4	2.1	3.5	0.7	0.8	0.87	Medium-High	Moderate	0.06
5	3.5	4.8	0.3	0.6	0.95	High	Significant	0.1
6	2.2	3.1	0.8	0.9	0.8	Medium	Moderate	0.05
7	3.3	3.9	0.4	0.5	0.88	Medium-High	Moderate	0.07
8	2.4	3.0	0.6	0.7	0.83	Medium	Moderate	0.06
9	1.9	2.7	0.7	0.8	0.75	Medium	Moderate	0.04
10	3.2	4.5	0.5	0.6	0.9	High	Significant	0.08
11	2.8	3.3	0.6	0.7	0.82	Medium	Moderate	0.05
12	3.1	4.0	0.4	0.5	0.89	Medium-High	Moderate	0.07
13	2.3	2.9	0.7	0.8	0.81	Medium	Moderate	0.05
14	3.4	4.7	0.3	0.4	0.93	High	Significant	0.09
15	2.0	3.6	0.5	0.6	0.77	Medium	Moderate	0.04
16	2.7	3.2	0.6	0.7	0.84	Medium	Moderate	0.06
17	3.6	4.9	0.3	0.5	0.91	High	Significant	0.08
18	2.4	2.8	0.7	0.8	0.8	Medium	Moderate	0.05
19	3.0	4.1	0.4	0.6	0.87	Medium-High	Moderate	0.07
20	2.5	3.3	0.5	0.7	0.85	Medium-High	Moderate	0.06
21	3.2	4.6	0.5	0.6	0.9	High	Significant	0.09
22	2.8	3.7	0.6	0.8	0.83	Medium	Moderate	0.05
23	3.5	4.8	0.3	0.5	0.92	High	Significant	0.1
24	2.2	3.1	0.8	0.9	0.76	Medium	Moderate	0.04
25	3.3	3.9	0.4	0.6	0.88	Medium-High	Moderate	0.07
26	2.4	3.2	0.7	0.8	0.82	Medium	Moderate	0.06
27	1.9	2.6	0.7	0.9	0.74	Medium	Moderate	0.04
28	3.1	4.3	0.5	0.7	0.9	High	Significant	0.08
29	2.7	3.4	0.6	0.8	0.81	Medium	Moderate	0.05
30	3.4	4.7	0.3	0.4	0.93	High	Significant	0.1
31	2.0	3.5	0.5	0.7	0.79	Medium	Moderate	0.04
32	2.6	3.8	0.6	0.9	0.85	Medium-High	Moderate	0.06
33	3.0	4.2	0.4	0.5	0.88	Medium-High	Moderate	0.08
34	2.3	2.9	0.7	0.8	0.77	Medium	Moderate	0.05
35	3.5	4.8	0.3	0.5	0.91	High	Significant	0.09
36	2.1	3.0	0.8	0.9	0.75	Medium	Moderate	0.04
37	3.3	4.4	0.5	0.7	0.89	Medium-High	Moderate	0.07
38	2.4	3.1	0.7	0.8	0.82	Medium	Moderate	0.06
39	1.8	2.7	0.6	0.9	0.74	Medium	Moderate	0.04
40	3.2	4.5	0.5	0.6	0.9	High	Significant	0.08
41	2.8	3.6	0.6	0.8	0.83	Medium	Moderate	0.05
42	3.1	4.0	0.4	0.5	0.87	Medium-High	Moderate	0.07
43	2.3	2.9	0.7	0.8	0.81	Medium	Moderate	0.05
44	3.4	4.7	0.3	0.4	0.93	High	Significant	0.09
45	2.5	3.4	0.5	0.7	0.85	Medium-High	Moderate	0.06
46	3.0	4.1	0.4	0.6	0.87	Medium-High	Moderate	0.07
47	2.7	3.5	0.6	0.7	0.84	Medium	Moderate	0.05
48	3.6	4.9	0.3	0.5	0.91	High	Significant	0.1
49	2.2	3.1	0.8	0.9	0.76	Medium	Moderate	0.04
50	3.3	4.4	0.5	0.6	0.89	Medium-High	Moderate	0.08
"""

P = "relationship-partner"
W = "relationship-work"
FR = "relationship-friendship"
D = "relationship-dating"
M = "relationship-marriage"
T = "relationship-trust"
K = "relationship-consanguinity"
SV = "sexual-violence"
TH = "threats"
MU = "mutilations"
PE = "public-exposure"
PI = "physical-injuries"
HA = "harassment"
LS = "labor-subordination"
IE = "indecent-exposure"
IC = "incommunication"

# id: (cluster, subcluster, title, terms, also_in); "~" marks a negated term.
SYMBOLIC = {
    1: (1, "1.1", "Partner with sexual violence", [P, SV]),
    2: (1, "1.1", "Partner without sexual violence", [P, "~" + SV]),
    4: (1, "1.2", "Partner with threats", [P, TH]),
    5: (1, "1.3", "Partner with public exposure", [P, PE]),
    10: (1, "1.4", "Partner with physical injuries", [P, PI]),
    7: (2, "2.1", "Workplace with harassment", [W, HA]),
    16: (2, "2.1", "Workplace subordination with harassment", [LS, HA]),
    14: (2, "2.2", "Workplace with sexual violence", [W, SV]),
    31: (2, "2.2", "Workplace subordination with sexual violence", [LS, SV]),
    48: (2, "2.3", "Workplace subordination with mutilations", [LS, MU]),
    18: (3, "3.1", "Friendship with threats", [FR, TH]),
    27: (3, "3.2", "Friendship with mutilations", [FR, MU]),
    36: (3, "3.3", "Friendship with indecent exposure", [FR, IE]),
    41: (3, "3.4", "Friendship with communication breakdown", [FR, IC]),
    19: (4, "4.1", "Dating with physical injuries", [D, PI]),
    29: (4, "4.2", "Dating with threats", [D, TH]),
    42: (4, "4.3", "Dating with mutilations", [D, MU]),
    46: (4, "4.4", "Dating with communication breakdown", [D, IC]),
    23: (5, "5.1", "Marriage with sexual violence", [M, SV]),
    33: (5, "5.2", "Marriage with communication breakdown", [M, IC]),
    43: (5, "5.3", "Marriage with mutilations", [M, MU]),
    37: (6, "6.1", "Trust-based relationship with harassment", [T, HA]),
    50: (6, "6.2", "Trust-based relationship with communication breakdown", [T, IC]),
    22: (7, "7.1", "Consanguinity with sexual violence", [K, SV]),
    3: (8, "8.1", "Communication breakdown", [IC]),
    9: (8, "8.1", "Communication breakdown with sexual violence", [IC, SV], [(9, "9")]),
    28: (8, "8.1", "Communication breakdown with public exposure", [IC, PE]),
    44: (8, "8.1", "Communication breakdown with mutilations", [IC, MU]),
    49: (8, "8.1", "Communication breakdown with harassment", [IC, HA]),
    47: (8, "8.1", "Communication breakdown with indecent exposure", [IC, IE]),
    13: (8, "8.2", "Public exposure with threats", [PE, TH]),
    24: (8, "8.2", "Public exposure with sexual violence", [PE, SV]),
    32: (8, "8.2", "Public exposure with mutilations", [PE, MU]),
    6: (8, "8.3", "Mutilations with sexual violence", [MU, SV]),
    25: (8, "8.3", "Mutilations with threats", [MU, TH]),
    38: (8, "8.3", "Mutilations with physical isolation", [MU, "isolation-physical"]),
    39: (8, "8.3", "Mutilations with harassment", [MU, HA]),
    30: (8, "8.4", "Sexual violence with harassment", [SV, HA], [(9, "9")]),
    34: (8, "8.4", "Sexual violence with communication issues", [SV, IC]),
    15: (8, "8.5", "Deprivation of liberty with physical injuries", ["deprivation-of-liberty", PI], [(9, "9")]),
    8: (8, "8.5", "Shameful injuries", ["shameful-injuries"], [(9, "9")]),
    12: (8, "8.6", "Social isolation with harassment", ["isolation-social", HA]),
    17: (8, "8.6", "Physical isolation with sexual violence", ["isolation-physical", SV]),
    21: (8, "8.6", "Digital isolation with harassment", ["isolation-digital", HA]),
    11: (9, "9", "Partner relationship without mutilations", ["~" + P, MU]),
    20: (9, "9", "Indecent exposure with sexual violence", [IE, SV]),
}


def build():
    rules = []
    for line in GAUSSIAN_TABLE.strip().splitlines():
        rid, a, b, sx, sy, peak, degree, impact, weight = line.split("\t")
        rid = int(rid)
        g = GaussianParams(float(a), float(b), float(sx), float(sy), float(peak), float(weight))
        if rid in SYMBOLIC:
            cluster, sub, title, terms, *also = SYMBOLIC[rid]
            terms = [RuleTerm(t.lstrip("~"), t.startswith("~")) for t in terms]
            also = also[0] if also else ()
        else:
            cluster, sub, title, terms, also = None, None, f"Rule {rid} (Gaussian only)", [], ()
        rules.append(Rule(rid, title, cluster, sub, terms, g, degree, impact, also))
    rb = RuleBase(tuple(rules), tuple(default_catalogs()))
    problems = validate_rulebase(rb, canonical=True)
    if problems:
        raise SystemExit("\n".join(map(str, problems)))
    return rb


if __name__ == "__main__":
    OUT.write_bytes(serialize_rulebase(build()))
    print(f"wrote {OUT}")
