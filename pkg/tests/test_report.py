"""Code report invariants over the corpus."""

from squab.report import build_code_report


class TestCodeReport:
    def test_histogram_sums(self, corpus):
        for s, dual in corpus:
            report = build_code_report(s, dual)
            assert sum(report.x_weights.values()) == s.n_nonopen_vertices, s.name
            assert sum(report.z_weights.values()) == len(s.faces), s.name
            assert report.n == s.n_qubits

    def test_generated_weights_positive(self, corpus):
        for s, dual in corpus:
            report = build_code_report(s, dual)
            assert all(w >= 1 for w in report.x_weights), s.name
            assert all(w >= 1 for w in report.z_weights), s.name

    def test_boundary_census(self, corpus):
        for s, dual in corpus:
            report = build_code_report(s, dual)
            assert sum(report.boundary.values()) == len(s.edges)

    def test_render_text_mentions_parameters(self):
        from squab import gen_bravyi_kitaev

        s, dual = gen_bravyi_kitaev(2)
        text = build_code_report(s, dual).render_text()
        assert "5 physical qubits" in text
        assert "1 logical qubits" in text
