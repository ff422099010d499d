"""Classify a gallery of replacement matrices.

One line per matrix: regime, stable point, rate gamma_hat, and the
predicted variance or exponent where one exists.
"""

from urnsa import ReplacementMatrix, classify

GALLERY = [
    ("toy", ReplacementMatrix(4, 5, 3, 2)),
    ("balanced", ReplacementMatrix(2, 1, 1, 2)),
    ("friedman small", ReplacementMatrix(1, 2, 2, 1)),
    ("friedman critical", ReplacementMatrix(3, 1, 1, 3)),
    ("power law", ReplacementMatrix(3, 0, 2, 5)),
    ("power law shifted", ReplacementMatrix(4, 1, 1, 4)),
    ("singular", ReplacementMatrix(2, 2, 1, 1)),
    ("identity", ReplacementMatrix(1, 0, 0, 1)),
    ("double zero", ReplacementMatrix(2, 0, 1, 2)),
    ("polya like", ReplacementMatrix(5, 0, 0, 5)),
]


def main() -> None:
    print(f"{'name':<18} {'matrix':<12} {'regime':<20} "
          f"{'p':>6} {'g_hat':>7}  prediction")
    for name, m in GALLERY:
        pred = classify(m)
        p = "" if pred.p is None else f"{pred.p:.3f}"
        gh = "" if pred.gamma_hat is None else f"{pred.gamma_hat:.4f}"
        if pred.predicted_variance is not None:
            extra = f"var {pred.predicted_variance:.6g}"
        elif pred.as_exponent is not None:
            extra = f"exponent {pred.as_exponent:.4g}"
        elif pred.roots:
            roots = ", ".join(f"{r.value:g}({r.stability})"
                              for r in pred.roots)
            extra = f"roots {roots}"
        else:
            extra = ""
        entries = ",".join(f"{v:g}" for v in m.entries())
        print(f"{name:<18} {entries:<12} {pred.regime.value:<20} "
              f"{p:>6} {gh:>7}  {extra}")


if __name__ == "__main__":
    main()
