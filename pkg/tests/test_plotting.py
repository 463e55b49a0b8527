from ovalcode.nmds import expected_case_counts
from ovalcode.plotting import plot_case_buckets, plot_weight_distribution
from ovalcode.weights import theoretical_weight_distribution


def test_weight_figure(tmp_path):
    W = theoretical_weight_distribution(8)
    p = plot_weight_distribution(W, tmp_path / "sub" / "w.png", W)
    assert p.exists() and p.read_bytes()[:4] == b"\x89PNG"


def test_case_figure_svg(tmp_path):
    exp = expected_case_counts(32)
    p = plot_case_buckets(exp, exp, tmp_path / "c.svg")
    text = p.read_text()
    assert "<svg" in text and "free2+T3" in text
