"""Straight-line reference scorer for the shipped loan setup.

Everything is written out longhand on purpose: the real engine must agree
with this file, so this file must not import from it or share any helper.
Universe bounds, term shapes, the eight rules, and the weighted average are
all spelled out inline.
"""

INCOME_LO, INCOME_HI = 1_000_000.0, 20_000_000.0
LOAN_LO, LOAN_HI = 5_000_000.0, 200_000_000.0
COLLATERAL_LO, COLLATERAL_HI = 10_000_000.0, 300_000_000.0
SCORE_LO, SCORE_HI = 0.0, 100.0
THRESHOLD = 60.0

# (income term, loan term, collateral term, connective, outcome term).
# Outcome is "tinggi" when at least two of {income tinggi, loan rendah,
# collateral tinggi} hold.  The two unanimous rows fire on ANY of their
# signals (OR); the six mixed rows demand ALL of theirs (AND) -- that
# combination keeps the score monotone in every input.
RULES = [
    ("rendah", "rendah", "rendah", "AND", "rendah"),
    ("rendah", "rendah", "tinggi", "AND", "tinggi"),
    ("rendah", "tinggi", "rendah", "OR", "rendah"),
    ("rendah", "tinggi", "tinggi", "AND", "rendah"),
    ("tinggi", "rendah", "rendah", "AND", "tinggi"),
    ("tinggi", "rendah", "tinggi", "OR", "tinggi"),
    ("tinggi", "tinggi", "rendah", "AND", "rendah"),
    ("tinggi", "tinggi", "tinggi", "AND", "tinggi"),
]


def _clamp(x, lo, hi):
    if x < lo:
        return lo
    if x > hi:
        return hi
    return x


def _mu_rendah(x, lo, hi):
    if x <= lo:
        return 1.0
    if x >= hi:
        return 0.0
    return (hi - x) / (hi - lo)


def _mu_tinggi(x, lo, hi):
    if x <= lo:
        return 0.0
    if x >= hi:
        return 1.0
    return (x - lo) / (hi - lo)


def oracle_score(income, loan, collateral):
    """Score an applicant from scratch: fuzzify, fire all 8 rules, average."""
    income = _clamp(income, INCOME_LO, INCOME_HI)
    loan = _clamp(loan, LOAN_LO, LOAN_HI)
    collateral = _clamp(collateral, COLLATERAL_LO, COLLATERAL_HI)

    degrees = {
        "penghasilan": {
            "rendah": _mu_rendah(income, INCOME_LO, INCOME_HI),
            "tinggi": _mu_tinggi(income, INCOME_LO, INCOME_HI),
        },
        "pinjaman": {
            "rendah": _mu_rendah(loan, LOAN_LO, LOAN_HI),
            "tinggi": _mu_tinggi(loan, LOAN_LO, LOAN_HI),
        },
        "jaminan": {
            "rendah": _mu_rendah(collateral, COLLATERAL_LO, COLLATERAL_HI),
            "tinggi": _mu_tinggi(collateral, COLLATERAL_LO, COLLATERAL_HI),
        },
    }

    numerator = 0.0
    denominator = 0.0
    for income_term, loan_term, collateral_term, connective, outcome_term in RULES:
        a = degrees["penghasilan"][income_term]
        b = degrees["pinjaman"][loan_term]
        c = degrees["jaminan"][collateral_term]
        alpha = min(a, b, c) if connective == "AND" else max(a, b, c)
        if outcome_term == "tinggi":
            z = SCORE_LO + alpha * (SCORE_HI - SCORE_LO)
        else:
            z = SCORE_HI - alpha * (SCORE_HI - SCORE_LO)
        numerator += alpha * z
        denominator += alpha
    if denominator == 0.0:
        raise ZeroDivisionError("no rule fired")
    return numerator / denominator


def oracle_decision(income, loan, collateral):
    return "accepted" if oracle_score(income, loan, collateral) >= THRESHOLD else "rejected"
