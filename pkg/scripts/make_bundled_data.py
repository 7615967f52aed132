"""Regenerate the bundled synthetic tables, question corpus, and knowledge store.

Run from the repo root:  python scripts/make_bundled_data.py
Outputs are committed under src/tabq/data/ and loaded as package data.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

OUT = Path(__file__).resolve().parent.parent / "src" / "tabq" / "data"
SEED = 20210607


def _dates(rng, n, start="2021-01-01"):
    base = np.datetime64(start)
    offsets = np.sort(rng.integers(0, 540, size=n))
    return [str(base + int(o)) for o in offsets]


def _sprinkle_missing(rng, cells, fraction=0.04, token=""):
    out = list(cells)
    k = max(1, int(len(out) * fraction))
    for i in rng.choice(len(out), size=k, replace=False):
        out[int(i)] = token
    return out


def make_manufacture(rng):
    n = 240
    humidity = rng.normal(48, 6, n)
    temperature = rng.normal(21, 2, n)
    pressure = rng.normal(101, 3, n)
    line_speed = rng.normal(60, 8, n)
    electrical_test = humidity * 0.18 + rng.normal(0, 0.4, n)
    defect_rate = np.clip(np.round(humidity / 12 + rng.normal(0, 1, n)).astype(int), 0, 9)
    machine = [f"m{i % 4 + 1}" for i in range(n)]
    shift = ["day" if i % 2 else "night" for i in range(n)]
    passed = ["yes" if e < 9.4 else "no" for e in electrical_test]
    cols = {
        "machine": machine,
        "shift": shift,
        "temperature": [f"{v:.2f}" for v in temperature],
        "humidity": _sprinkle_missing(rng, [f"{v:.2f}" for v in humidity]),
        "pressure": [f"{v:.2f}" for v in pressure],
        "line_speed": [f"{v:.1f}" for v in line_speed],
        "defect_rate": [str(v) for v in defect_rate],
        "electrical_test": [f"{v:.3f}" for v in electrical_test],
        "inspection_date": _dates(rng, n),
        "passed_qa": passed,
    }
    return cols


def make_sport(rng):
    n = 300
    goals = rng.poisson(1.4, n)
    assists = rng.poisson(1.0, n)
    minutes = rng.integers(45, 91, n)
    rating = np.clip(5.5 + goals * 0.9 + assists * 0.3 + rng.normal(0, 0.5, n), 0, 10)
    team = [["sharks", "wolves", "eagles", "bears"][i % 4] for i in range(n)]
    position = [["forward", "midfield", "defense", "keeper"][i % 4] for i in range(n)]
    injured = ["yes" if rng.random() < 0.08 else "no" for _ in range(n)]
    cols = {
        "player": [f"player_{i % 30 + 1:02d}" for i in range(n)],
        "team": team,
        "position": _sprinkle_missing(rng, position, token="NA"),
        "goals": [str(v) for v in goals],
        "assists": [str(v) for v in assists],
        "minutes_played": [str(v) for v in minutes],
        "rating": _sprinkle_missing(rng, [f"{v:.2f}" for v in rating]),
        "match_date": _dates(rng, n),
        "injured": injured,
    }
    return cols


def make_sales(rng):
    n = 260
    sales = np.round(rng.lognormal(6, 0.6, n), 2)
    quantity = rng.integers(1, 21, n)
    discount = np.round(rng.uniform(0, 0.3, n), 2)
    profit = np.round(sales * 0.22 + rng.normal(0, 30, n), 2)
    product = [["laptop", "phone", "tablet", "monitor", "camera", "printer"][i % 6]
               for i in range(n)]
    region = [["north", "south", "east", "west"][i % 4] for i in range(n)]
    returned = ["yes" if rng.random() < 0.06 else "no" for _ in range(n)]
    cols = {
        "product": product,
        "region": _sprinkle_missing(rng, region, token="N/A"),
        "sales": [f"{v:.2f}" for v in sales],
        "quantity": [str(v) for v in quantity],
        "discount": [f"{v:.2f}" for v in discount],
        "profit": _sprinkle_missing(rng, [f"{v:.2f}" for v in profit]),
        "order_date": _dates(rng, n),
        "returned": returned,
    }
    return cols


def make_food(rng):
    n = 220
    calories = np.round(rng.normal(520, 150, n), 0)
    protein = np.round(calories * 0.05 + rng.normal(0, 6, n), 1)
    price = np.round(rng.uniform(4, 28, n), 2)
    prep_time = rng.integers(5, 61, n)
    dish = [[f"dish_{j:02d}" for j in range(1, 11)][i % 10] for i in range(n)]
    cuisine = [["italian", "thai", "mexican", "indian", "japanese"][i % 5] for i in range(n)]
    spicy = ["yes" if c in ("thai", "mexican", "indian") and rng.random() < 0.7 else "no"
             for c in cuisine]
    cols = {
        "dish": dish,
        "cuisine": cuisine,
        "calories": [f"{v:.0f}" for v in calories],
        "protein": _sprinkle_missing(rng, [f"{v:.1f}" for v in protein]),
        "price": [f"{v:.2f}" for v in price],
        "prep_time": [str(v) for v in prep_time],
        "served_date": _dates(rng, n),
        "spicy": spicy,
    }
    return cols


def make_health_care(rng):
    n = 250
    age = rng.integers(18, 90, n)
    bmi = np.round(rng.normal(26, 4, n), 1)
    blood_pressure = np.round(95 + age * 0.55 + rng.normal(0, 8, n), 0)
    cholesterol = np.round(150 + age * 0.8 + rng.normal(0, 20, n), 0)
    recovery_days = np.clip(rng.poisson(7, n), 1, 30)
    diagnosis = [["hypertension", "diabetes", "asthma", "fracture", "flu", "migraine"][i % 6]
                 for i in range(n)]
    ward = [["icu", "general", "surgical", "daycare"][i % 4] for i in range(n)]
    smoker = ["yes" if rng.random() < 0.22 else "no" for _ in range(n)]
    cols = {
        "patient_id": [f"pt{i + 1:04d}" for i in range(n)],
        "age": [str(v) for v in age],
        "bmi": [f"{v:.1f}" for v in bmi],
        "blood_pressure": [f"{v:.0f}" for v in blood_pressure],
        "cholesterol": _sprinkle_missing(rng, [f"{v:.0f}" for v in cholesterol]),
        "recovery_days": [str(v) for v in recovery_days],
        "diagnosis": diagnosis,
        "ward": _sprinkle_missing(rng, ward, token="null"),
        "admission_date": _dates(rng, n),
        "smoker": smoker,
    }
    return cols


def make_banking(rng):
    n = 280
    balance = np.round(rng.lognormal(8.2, 0.9, n), 2)
    credit_score = np.clip(np.round(rng.normal(680, 60, n)), 300, 850).astype(int)
    loan_amount = np.round(balance * 1.6 + rng.normal(0, 2000, n), 2)
    interest_rate = np.round(14 - credit_score * 0.012 + rng.normal(0, 0.4, n), 2)
    term_months = [[12, 24, 36, 48, 60][i % 5] for i in range(n)]
    account_type = [["checking", "savings", "credit", "loan"][i % 4] for i in range(n)]
    branch = [["downtown", "uptown", "eastside", "westside", "airport", "harbor"][i % 6]
              for i in range(n)]
    defaulted = ["yes" if rng.random() < 0.07 else "no" for _ in range(n)]
    cols = {
        "account_type": account_type,
        "branch": _sprinkle_missing(rng, branch, token="NA"),
        "balance": [f"{v:.2f}" for v in balance],
        "credit_score": [str(v) for v in credit_score],
        "loan_amount": _sprinkle_missing(rng, [f"{v:.2f}" for v in loan_amount]),
        "interest_rate": [f"{v:.2f}" for v in interest_rate],
        "term_months": [str(v) for v in term_months],
        "opened_date": _dates(rng, n),
        "defaulted": defaulted,
    }
    return cols


# Per-domain slots: n1/n2/n3 numeric, c1/c2 categorical, hard = a token that
# matches no column, x* = operands used by restriction questions.
DOMAINS = {
    "manufacture": {
        "build": make_manufacture,
        "n1": "electrical_test", "n2": "humidity", "n3": "defect_rate",
        "c1": "machine", "c2": "shift", "hard": "tempr",
        "x1": 9, "x2": 50, "x3": 2, "x4": 5, "x5": 10,
        "hard_qs": ["nosignal", "relate_each", "spread", "synonym"],
        "synonym_q": "What drives the moisture level?", "synonym_col": "humidity",
    },
    "sport": {
        "build": make_sport,
        "n1": "rating", "n2": "goals", "n3": "minutes_played",
        "c1": "team", "c2": "position", "hard": "mins",
        "x1": 7, "x2": 3, "x3": 90, "x4": 5, "x5": 10,
        "hard_qs": ["nosignal", "strange", "over", "spread"],
    },
    "sales": {
        "build": make_sales,
        "n1": "sales", "n2": "profit", "n3": "quantity",
        "c1": "product", "c2": "region", "hard": "rev",
        "x1": 500, "x2": 100, "x3": 5, "x4": 5, "x5": 10,
        "hard_qs": ["nosignal", "relate_each", "strange", "over"],
    },
    "food": {
        "build": make_food,
        "n1": "calories", "n2": "protein", "n3": "prep_time",
        "c1": "cuisine", "c2": "dish", "hard": "cals",
        "x1": 500, "x2": 20, "x3": 30, "x4": 5, "x5": 10,
        "hard_qs": ["nosignal", "spread", "synonym", "over"],
        "synonym_q": "What drives the kcal count?", "synonym_col": "calories",
    },
    "health_care": {
        "build": make_health_care,
        "n1": "blood_pressure", "n2": "cholesterol", "n3": "recovery_days",
        "c1": "diagnosis", "c2": "ward", "hard": "bp",
        "x1": 140, "x2": 180, "x3": 7, "x4": 5, "x5": 10,
        "hard_qs": ["nosignal", "relate_each", "spread", "over"],
    },
    "banking": {
        "build": make_banking,
        "n1": "balance", "n2": "credit_score", "n3": "term_months",
        "c1": "account_type", "c2": "branch", "hard": "apr",
        "x1": 5000, "x2": 650, "x3": 36, "x4": 5, "x5": 10,
        "hard_qs": ["nosignal", "spread", "strange", "relate_each"],
    },
}


def _speak(column: str) -> str:
    return column.replace("_", " ")


def question_templates(d: dict) -> list[dict]:
    """30 labeled questions for one domain; see docs/matching.md for design."""
    n1, n2, n3 = _speak(d["n1"]), _speak(d["n2"]), _speak(d["n3"])
    c1, c2 = _speak(d["c1"]), _speak(d["c2"])
    N1, N2, N3, C1, C2 = d["n1"], d["n2"], d["n3"], d["c1"], d["c2"]
    x1, x2, x3, x4, x5 = d["x1"], d["x2"], d["x3"], d["x4"], d["x5"]

    def q(text, cols, intention, restrictions=(), tags=()):
        return {
            "question": text,
            "gold_columns": cols,
            "gold_intention": intention,
            "gold_restrictions": [
                {"kind": k, "operand": op} for k, op in restrictions
            ],
            "tags": list(tags),
        }

    return [
        q(f"What is the distribution of {n1}?", [N1], "Distribution", (), ["crafted"]),
        q(f"Is {n1} normally distributed?", [N1], "Normality", (), ["crafted"]),
        q(f"Are there outliers in {n2}?", [N2], "Anomaly", (), ["crafted"]),
        q(f"What drives the difference between high and low {n1}?", [N1], "RootCause",
          (), ["crafted"]),
        q(f"How does {n1} relate to {n2}?", [N1, N2], "Relationship", (), ["crafted"]),
        q(f"How does {n1} compare across {c1}?", [N1, C1], "Comparison", (), ["crafted"]),
        q(f"What share does each {c1} account for?", [C1], "Proportion", (), ["crafted"]),
        q(f"How has {n1} changed over time?", [N1], "Trend", (), ["crafted"]),
        q(f"What will {n1} be in the future?", [N1], "Forecast", (), ["crafted"]),
        q(f"Why does {n1} vary so much?", [N1], "RootCause", (), ["crafted"]),
        q(f"What is the average {n1}?", [N1], "Aggregation",
          [("Average", None)], ["restriction:Average"]),
        q(f"What is the median {n2}?", [N2], "Aggregation",
          [("Median", None)], ["restriction:Median"]),
        q(f"What is the total {n3}?", [N3], "Aggregation",
          [("Sum", None)], ["restriction:Sum"]),
        q(f"What is the maximum {n1}?", [N1], "Aggregation",
          [("Maximum", None)], ["restriction:Maximum"]),
        q(f"What is the minimum {n2}?", [N2], "Aggregation",
          [("Minimum", None)], ["restriction:Minimum"]),
        q(f"What are the top ten {c1} by sum of {n1}?", [C1, N1], "Ranking",
          [("Top", 10), ("Sum", None)], ["restriction:Top", "restriction:Sum"]),
        q(f"Show the bottom 3 {c1} by average {n2}", [C1, N2], "Ranking",
          [("Last", 3), ("Average", None)], ["restriction:Last", "restriction:Average"]),
        q(f"What is the distribution of {n1} above {x1}?", [N1], "Distribution",
          [("GreaterThan", x1)], ["restriction:GreaterThan"]),
        q(f"What is the average {n2} below {x2}?", [N2], "Aggregation",
          [("Average", None), ("LessThan", x2)], ["restriction:LessThan"]),
        q(f"How many rows have {n3} equal to {x3}?", [N3], "Aggregation",
          [("EqualTo", x3)], ["restriction:EqualTo"]),
        q(f"What is the average {n1} plus {x4}?", [N1], "Aggregation",
          [("Average", None), ("Plus", x4)], ["restriction:Plus"]),
        q(f"What is the average {n1} minus {x4}?", [N1], "Aggregation",
          [("Average", None), ("Minus", x4)], ["restriction:Minus"]),
        q(f"What is the average {n2} times 2?", [N2], "Aggregation",
          [("Average", None), ("Multiply", 2)], ["restriction:Multiply"]),
        q(f"What is the average {n1} divided by {x5}?", [N1], "Aggregation",
          [("Average", None), ("Divide", x5)], ["restriction:Divide"]),
        q(f"Rank {c2} by total {n1}", [C2, N1], "Ranking",
          [("Sum", None)], ["restriction:Sum"]),
        q(f"What are the top 5 {c2} by maximum {n2}?", [C2, N2], "Ranking",
          [("Top", 5), ("Maximum", None)], ["restriction:Top", "restriction:Maximum"]),
    ] + [_HARD_BUILDERS[name](q, d) for name in d["hard_qs"]]


# Adversarial questions; each domain draws a different mix so the accuracy
# table is not uniform (over-/under-identification per the matching notes).
_HARD_BUILDERS = {
    "nosignal": lambda q, d: q(
        f"What is the typical {d['hard']}?", [d["n1"]], "Aggregation", (), ["hard"]),
    "relate_each": lambda q, d: q(
        f"How does {_speak(d['n2'])} relate to {_speak(d['n1'])} in each {_speak(d['c1'])}?",
        [d["n1"], d["n2"]], "Relationship", (), ["hard"]),
    "spread": lambda q, d: q(
        f"Is the spread of {_speak(d['n1'])} unusual?", [d["n1"]], "Distribution",
        (), ["hard"]),
    "over": lambda q, d: q(
        f"What is the total {_speak(d['n3'])} over {d['x3']}?", [d["n3"]], "Aggregation",
        [("Sum", None), ("GreaterThan", d["x3"])], ["hard"]),
    "strange": lambda q, d: q(
        f"Is there anything strange about {_speak(d['n2'])}?", [d["n2"]], "Anomaly",
        (), ["hard"]),
    "synonym": lambda q, d: q(
        d["synonym_q"], [d["synonym_col"]], "RootCause", (), ["hard"]),
}


KNOWLEDGE = [
    ("k01", "Ambient humidity swings stress precision assembly lines and often "
            "show up first in electrical test readings.", "manufacture"),
    ("k02", "Stable clean-room conditions keep solder joints and sensor "
            "calibration consistent between shifts.", "manufacture"),
    ("k03", "Player ratings usually track goal involvement more closely than "
            "minutes on the pitch.", "sport"),
    ("k04", "Injury spells depress both availability and scoring form for "
            "weeks after a return.", "sport"),
    ("k05", "Revenue concentration in a few products makes ranking views the "
            "fastest way to spot portfolio risk.", "sales"),
    ("k06", "Discount depth usually trades margin for volume; profit follows "
            "sales only while discounts stay shallow.", "sales"),
    ("k07", "Calorie-dense dishes tend to carry more protein simply because "
            "portion sizes grow together.", "food"),
    ("k08", "Preparation time drives kitchen throughput more than price point "
            "does.", "food"),
    ("k09", "Blood pressure rises with age in most cohorts, so age should be "
            "controlled for before blaming other factors.", "health care"),
    ("k10", "Longer recovery stays cluster around chronic diagnoses rather "
            "than acute ones.", "health care"),
    ("k11", "Credit scores price risk: lower scores attract higher interest "
            "rates on otherwise similar loans.", "banking"),
    ("k12", "Large balances concentrate in a minority of accounts, so median "
            "views beat means for typical-customer questions.", "banking"),
]


def main() -> None:
    OUT.mkdir(parents=True, exist_ok=True)
    (OUT / "tables").mkdir(exist_ok=True)
    rng = np.random.default_rng(SEED)

    corpus_lines = []
    for source, d in DOMAINS.items():
        cols = d["build"](rng)
        names = list(cols)
        n = len(cols[names[0]])
        lines = [",".join(names)]
        for i in range(n):
            lines.append(",".join(str(cols[name][i]) for name in names))
        (OUT / "tables" / f"{source}.csv").write_text("\n".join(lines) + "\n",
                                                      encoding="utf-8")
        for record in question_templates(d):
            record["source"] = source
            corpus_lines.append(json.dumps(record, sort_keys=True))

    (OUT / "corpus.jsonl").write_text("\n".join(corpus_lines) + "\n", encoding="utf-8")

    knowledge_lines = [
        json.dumps({"snippet_id": sid, "text": text, "source": src}, sort_keys=True)
        for sid, text, src in KNOWLEDGE
    ]
    (OUT / "knowledge.jsonl").write_text("\n".join(knowledge_lines) + "\n",
                                         encoding="utf-8")
    print(f"wrote {len(DOMAINS)} tables, {len(corpus_lines)} corpus records, "
          f"{len(knowledge_lines)} snippets to {OUT}")


if __name__ == "__main__":
    main()
