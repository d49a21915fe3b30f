import pytest

from treegraph.ag_core import ArcType
from treegraph import formats
from treegraph.constituency import Leaf, TreeNode, read_tree
from treegraph.formats import (
    ConversionLossError,
    ParseError,
    native,
    penn,
    read_corpus,
    write_corpus,
)

from conftest import chart, fixture_text

ALL_FIXTURES = [
    ("penn", "yields.penn"),
    ("penn", "switchboard.penn"),
    ("penn", "attribute.penn"),
    ("penn", "swim.penn"),
    ("bracket-record", "uam.uam"),
    ("floresta", "floresta.floresta"),
    ("turin", "turin.turin"),
    ("tiger-xml", "tiger.xml"),
    ("nested-xml", "french.xml"),
]


class TestPenn:
    def test_yields_parses_with_coindexed_trace(self):
        docs = read_corpus("penn", fixture_text("yields.penn"))
        assert len(docs) == 1
        g = docs[0].graph
        traces = g.arcs(ArcType.TRACE)
        assert len(traces) == 1
        assert traces[0].fields == {"form": "*", "coindex": "1"}
        partners = [a for a in g.arcs(ArcType.PHRASAL)
                    if a.fields.get("coindex") == "1"]
        assert [a.label for a in partners] == ["NP-SBJ"]

    def test_simple_counts(self):
        docs = read_corpus("penn", "(S (NP (DT the) (NN boy)))")
        g = docs[0].graph
        assert len(g.arcs(ArcType.WORD)) == 2
        assert len(g.arcs(ArcType.PHRASAL)) == 4
        assert g.surface_string() == "the boy"

    def test_switchboard_disfluency_tokens_plain(self):
        docs = read_corpus("penn", fixture_text("switchboard.penn"))
        assert len(docs) == 2
        forms = [a.form for a in docs[1].graph.words_in_order()]
        assert "[" in forms and "+" in forms and "]" in forms

    @pytest.mark.parametrize("name", ["yields.penn", "switchboard.penn",
                                      "attribute.penn"])
    def test_roundtrip_token_identical(self, name):
        text = fixture_text(name)
        out = write_corpus("penn", read_corpus("penn", text))
        assert penn.canonicalize(out) == penn.canonicalize(text)

    def test_unbalanced_has_position(self):
        with pytest.raises(ParseError) as err:
            read_corpus("penn", "(S (NP the\n boy)")
        assert "1:1" in str(err.value)

    def test_stray_close(self):
        with pytest.raises(ParseError):
            read_corpus("penn", "(S x))")

    def test_empty_constituent(self):
        with pytest.raises(ParseError):
            read_corpus("penn", "(S (NP ) x)")

    def test_category_coindex_rejoined(self):
        out = write_corpus("penn", read_corpus("penn", "(NP-SBJ-1 it)"))
        assert "NP-SBJ-1" in out

    def test_unlabeled_rejected_without_flag(self):
        from treegraph import constituency as con
        docs = read_corpus("penn", "(S (NP a) (VP b))")
        g = docs[0].graph
        con.move_down(con.OrientedTree(g, g.words_in_order()[0]))
        with pytest.raises(ConversionLossError):
            write_corpus("penn", docs)
        out = write_corpus("penn", docs, allow_unlabeled=True)
        assert "(a)" in out.replace("( a)", "(a)") or "( a)" in out

    def test_crossing_rejected(self):
        docs = read_corpus("penn", "(S (A x) (B y))")
        g = docs[0].graph
        a_node = [n for n in g.arcs(ArcType.PHRASAL) if n.label == "A"][0]
        y = g.words_in_order()[1]
        g.set_parent(y, a_node)  # A now covers x and y but not the span between
        g2 = read_corpus("penn", "(S (A x0 x1 x2))")[0].graph
        left, mid, right = g2.words_in_order()
        top = [n for n in g2.arcs(ArcType.PHRASAL) if n.label == "S"][0]
        a2 = [n for n in g2.arcs(ArcType.PHRASAL) if n.label == "A"][0]
        g2.set_parent(mid, top)
        with pytest.raises(ConversionLossError):
            formats.write_penn(g2, top)


class TestBracketRecord:
    def test_uam_word_fields(self):
        docs = read_corpus("bracket-record", fixture_text("uam.uam"))
        g = docs[0].graph
        el = g.words_in_order()[0]
        assert el.fields == {"label": "ART", "features": "DEF MASC SG",
                             "form": "El", "lemma": "el"}

    def test_plain_record_like_penn(self):
        docs = read_corpus("bracket-record", '(S (N "<x>" "x"))')
        assert docs[0].graph.surface_string() == "x"

    def test_coreference_pair_coindexed(self):
        docs = read_corpus("bracket-record", fixture_text("uam.uam"))
        g = docs[0].graph
        tagged = [a for a in g.arcs() if a.fields.get("coindex") == "1"]
        assert len(tagged) == 2
        assert {a.type for a in tagged} == {ArcType.PHRASAL}
        trace_host = [a for a in tagged
                      if any(k.type is ArcType.TRACE
                             for k in g.children_in_order(a))]
        assert len(trace_host) == 1

    def test_feature_after_child_rejected(self):
        with pytest.raises(ParseError):
            read_corpus("bracket-record", "(S (NP x) STRAY)")


class TestFloresta:
    def test_fragment_structure(self):
        docs = read_corpus("floresta", fixture_text("floresta.floresta"))
        assert len(docs) == 1
        g = docs[0].graph
        root = docs[0].root
        assert root.fields["func"] == "STA" and root.label == "fcl"
        tree = read_tree(g, root)
        # hand-derived nesting from the = counts
        labels = [c.fields.get("form") if isinstance(c, Leaf)
                  else c.fields.get("label") for c in tree.children]
        assert labels == ["np", "é", "np", "."]
        subj = tree.children[0]
        assert [c.fields["form"] for c in subj.children] == ["O", "7_e_Meio"]
        assert subj.children[1].fields == {
            "func": "H", "label": "prop", "features": "M S", "form": "7_e_Meio"}
        sc = tree.children[2]
        assert [c.fields.get("func") for c in sc.children] == [">N", "H", "N<"]
        pp = sc.children[2]
        inner_np = pp.children[1]
        assert [c.fields["form"] for c in inner_np.children] == \
            ["a", "noite", "algarvia"]

    def test_surface(self):
        docs = read_corpus("floresta", fixture_text("floresta.floresta"))
        assert docs[0].graph.surface_string() == \
            "O 7_e_Meio é um ex-libris de a noite algarvia ."

    def test_depth_jump_rejected(self):
        text = "<s>\nSTA:fcl\n==H:n(M S)\tx\n</s>"
        with pytest.raises(ParseError):
            read_corpus("floresta", text)


class TestTurin:
    def test_sample_parents_and_rels(self):
        docs = read_corpus("turin", fixture_text("turin.turin"))
        assert len(docs) == 1
        g = docs[0].graph
        words = g.words_in_order()
        by_pos = {i + 1: a for i, a in enumerate(words)}

        def parent_pos(word):
            p = g.parent_of(word)
            if p.type is ArcType.ROOT:
                return 0
            return [k for k, v in by_pos.items() if v.id == p.id][0]

        assert parent_pos(by_pos[1]) == 0
        assert by_pos[1].fields["rel"] == "TOP-VERB"
        assert parent_pos(by_pos[2]) == 1
        assert by_pos[2].fields["rel"] == "PREDCOMPL-SUBJ"
        # decimal 13.1 sits at position 14, under word 13 (position 13)
        assert by_pos[14].form == "dell'"
        assert parent_pos(by_pos[14]) == 13
        assert by_pos[14].fields["rel"] == "PREPARG"
        assert parent_pos(by_pos[15]) == 14  # Albania under 13.1

    def test_line_continuation_joined(self):
        docs = read_corpus("turin", fixture_text("turin.turin"))
        g = docs[0].graph
        w7 = g.words_in_order()[6]
        assert w7.form == "realizzazione"
        assert "TRANS" in w7.fields["morph"]

    def test_unknown_parent(self):
        with pytest.raises(ParseError):
            read_corpus("turin", "1 a (A) [9;X]")

    def test_malformed_line(self):
        with pytest.raises(ParseError):
            read_corpus("turin", "je ne sais quoi")

    def test_corpus_blank_line_split(self):
        text = "1 a (A) [0;X]\n\n1 b (B) [0;Y]"
        docs = read_corpus("turin", text)
        assert [d.graph.surface_string() for d in docs] == ["a", "b"]


class TestTigerXml:
    def test_paper_sample(self):
        docs = read_corpus("tiger-xml", fixture_text("tiger.xml"))
        g = docs[0].graph
        assert docs[0].root.label == "S"
        assert [a.form for a in g.children_in_order(docs[0].root)] == \
            ["the", "boy"]

    def test_edge_label_on_child(self):
        text = ('<n id="n1" cat="S"><edge href="#id(w1)" label="HD"/>'
                '<edge href="#id(w2)"/></n>'
                '<w id="w1" word="runs"/><w id="w2" word="far"/>')
        g = read_corpus("tiger-xml", text)[0].graph
        runs = g.words_in_order()[0]
        assert runs.fields["rel"] == "HD"

    def test_semantic_edge_is_coindex_not_parent(self):
        text = ('<n id="n1" cat="S"><edge href="#id(w1)"/>'
                '<edge href="#id(w2)"/><edge href="#id(w2)" type="semantic"/>'
                '</n><w id="w1" word="a"/><w id="w2" word="b"/>')
        g = read_corpus("tiger-xml", text)[0].graph
        a, b = g.words_in_order()
        root = read_corpus("tiger-xml", text)[0].root
        assert b.parent is not None
        assert b.fields.get("coindex") is not None

    def test_dangling_href(self):
        with pytest.raises(ParseError):
            read_corpus("tiger-xml", '<n id="n1" cat="S">'
                                     '<edge href="#id(w9)"/></n>'
                                     '<w id="w1" word="a"/>')

    def test_double_parent_rejected(self):
        text = ('<n id="n1" cat="A"><edge href="#id(w1)"/></n>'
                '<n id="n2" cat="B"><edge href="#id(w1)"/></n>'
                '<w id="w1" word="a"/>')
        with pytest.raises(ParseError):
            read_corpus("tiger-xml", text)

    def test_roundtrip_fixpoint(self):
        docs = read_corpus("tiger-xml", fixture_text("tiger.xml"))
        once = write_corpus("tiger-xml", docs)
        twice = write_corpus("tiger-xml", read_corpus("tiger-xml", once))
        assert once == twice

    def test_penn_graph_roundtrips_through_tiger(self):
        docs = read_corpus("penn", fixture_text("yields.penn"))
        out = write_corpus("tiger-xml", docs)
        back = read_corpus("tiger-xml", out)
        assert back[0].graph.surface_string() == docs[0].graph.surface_string()
        n_traces = len(back[0].graph.arcs(ArcType.TRACE))
        assert n_traces == 1
        assert write_corpus("tiger-xml", back) == out


class TestNestedXml:
    def test_french_fragment(self):
        docs = read_corpus("nested-xml", fixture_text("french.xml"))
        g = docs[0].graph
        root = docs[0].root
        assert root.label == "S"
        top_labels = [a.label for a in g.children_in_order(root)]
        assert top_labels == ["NP", "PP", "PONCT"]

    def test_pp_over_two_tagged_words(self):
        docs = read_corpus("nested-xml", "<PP>of:P students:NC</PP>")
        g = docs[0].graph
        words = g.words_in_order()
        assert [(w.form, w.fields["pos"]) for w in words] == \
            [("of", "P"), ("students", "NC")]

    def test_multiword_convention(self):
        docs = read_corpus("nested-xml", fixture_text("french.xml"))
        forms = [w.form for w in docs[0].graph.words_in_order()]
        assert "compared to" in forms and "The proportion" in forms

    def test_ponct(self):
        docs = read_corpus("nested-xml", fixture_text("french.xml"))
        g = docs[0].graph
        assert g.words_in_order()[-1].form == ","

    def test_empty_element(self):
        with pytest.raises(ParseError):
            read_corpus("nested-xml", "<S><NP></NP></S>")


class TestNative:
    def test_identity_on_every_reader_output(self):
        for fmt, name in ALL_FIXTURES:
            for doc in read_corpus(fmt, fixture_text(name)):
                once = native.write_native(doc.graph)
                again = native.write_native(native.read_native(once))
                assert once == again, (fmt, name)

    def test_schema_field_order(self):
        g = read_corpus("penn", "(S (NP x))")[0].graph
        text = native.write_native(g)
        assert text.index('"anchors"') < text.index('"arcs"')
        first_arc = text.split('"arcs"')[1]
        for earlier, later in [('"id"', '"start"'), ('"start"', '"end"'),
                               ('"end"', '"type"'), ('"type"', '"fields"')]:
            assert first_arc.index(earlier) < first_arc.index(later)

    def test_bad_json(self):
        with pytest.raises(ParseError):
            native.read_native("{nope")

    def test_missing_keys(self):
        with pytest.raises(ParseError):
            native.read_native('{"anchors": []}')

    def test_corpus_array(self):
        g1 = read_corpus("penn", "(S (NP x))")[0].graph
        g2 = read_corpus("penn", "(S (NP y))")[0].graph
        text = native.write_native_corpus([g1, g2])
        back = native.read_native_corpus(text)
        assert [b.surface_string() for b in back] == ["x", "y"]

    def test_corrupt_graph_loads_for_validate(self):
        text = ('{"anchors": [{"id": "a0", "order": "0"},'
                ' {"id": "a1", "order": "1"}],'
                ' "arcs": [{"id": "e0", "start": "a1", "end": "a0",'
                ' "type": "word", "fields": {"form": "x"}, "refs": []}]}')
        g = native.read_native(text)
        assert any(v.rule == "reversed-span" for v in g.validate())


class TestInvariants:
    @pytest.mark.parametrize("fmt,name", ALL_FIXTURES)
    def test_reader_output_validates(self, fmt, name):
        for doc in read_corpus(fmt, fixture_text(name)):
            assert doc.graph.validate() == []

    @pytest.mark.parametrize("fmt,name", ALL_FIXTURES)
    def test_anchors_carry_offsets(self, fmt, name):
        for doc in read_corpus(fmt, fixture_text(name)):
            assert all(a.offset is not None for a in doc.graph.anchors())

    def test_terminal_strings_match_source_tokens(self):
        docs = read_corpus("penn", fixture_text("yields.penn"))
        toks = [t for t, _ in penn.tokenize(fixture_text("yields.penn"))]
        # source terminals: tokens that are neither parens nor labels
        assert docs[0].graph.surface_string().split() == [
            "Yields", "on", "money-market", "mutual", "funds", "continued",
            "to", "slide", ",", "amid", "signs", "that", "portfolio",
            "managers", "expect", "further", "declines", "in", "interest",
            "rates", "."]
        turin_docs = read_corpus("turin", fixture_text("turin.turin"))
        source_forms = [line.split()[1] for line
                        in fixture_text("turin.turin").splitlines()
                        if line and line[0].isdigit()]
        got = [w.form for w in turin_docs[0].graph.words_in_order()]
        assert got == source_forms
