"""Design parameters of the three reference single-arm studies.

Study (i) targets 3-month progression-free survival, (ii) 18-month overall
survival, and (iii) 6-month progression-free survival; each entry carries
the null/alternative survival probabilities, analysis time, accrual and
follow-up lengths, one-sided alpha, and target power used in the
corresponding power simulations.
"""

STUDIES = (
    {"study": "i", "s0": 0.50, "s1": 0.70, "t": 3.0, "a": 22.0, "b": 4.0,
     "alpha": 0.05, "power": 0.90},
    {"study": "ii", "s0": 0.40, "s1": 0.55, "t": 18.0, "a": 27.0, "b": 18.0,
     "alpha": 0.05, "power": 0.82},
    {"study": "iii", "s0": 0.25, "s1": 0.50, "t": 6.0, "a": 23.0, "b": 6.0,
     "alpha": 0.05, "power": 0.90},
)


def get_study(study_id: str) -> dict:
    for row in STUDIES:
        if row["study"] == study_id:
            return dict(row)
    raise KeyError(f"unknown study {study_id!r}; expected one of i, ii, iii")
