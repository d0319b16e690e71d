import numpy as np
import pytest

from gesturelab.errors import ConfigError, SchemaError
from gesturelab.ingest import EmbeddingTable, TranscriptWord
from gesturelab.semantics import (
    PhraseSpan,
    embed_phrases,
    extract_phrases,
    filter_phrases,
    phrase_embedding,
    rule_tag,
    sentence_spans,
)


def words_from(pairs):
    """[(text, pos)] -> TranscriptWords at 0.5 s per word."""
    return [
        TranscriptWord(text, i * 0.5, i * 0.5 + 0.4, pos)
        for i, (text, pos) in enumerate(pairs)
    ]


class TestExtractPhrases:
    def test_det_adj_noun_is_one_np(self):
        words = words_from([("the", "DET"), ("red", "ADJ"), ("car", "NOUN")])
        spans = extract_phrases(words)
        nps = [s for s in spans if s.kind == "NP"]
        assert len(nps) == 1
        assert nps[0].text == "the red car"
        assert nps[0].word_range == (0, 2)

    def test_coordinated_nouns_stay_separate(self):
        words = words_from([("pros", "NOUN"), ("and", "CCONJ"), ("cons", "NOUN")])
        nps = [s for s in extract_phrases(words) if s.kind == "NP"]
        assert [s.text for s in nps] == ["pros", "cons"]

    def test_preposition_plus_proper_noun_is_pp(self):
        words = words_from([("in", "ADP"), ("Germany", "PROPN")])
        spans = extract_phrases(words)
        pps = [s for s in spans if s.kind == "PP"]
        assert len(pps) == 1
        assert pps[0].text == "in Germany"
        # the noun also stands alone as an NP of a different kind
        assert any(s.kind == "NP" and s.text == "Germany" for s in spans)

    def test_svo(self):
        words = words_from(
            [("the", "DET"), ("coach", "NOUN"), ("tells", "VERB"),
             ("a", "DET"), ("story", "NOUN")]
        )
        svos = [s for s in extract_phrases(words) if s.kind == "SVO"]
        assert len(svos) == 1
        assert svos[0].text == "the coach tells a story"
        assert svos[0].word_range == (0, 4)

    def test_vp_with_aux_and_part(self):
        words = words_from([("could", "AUX"), ("not", "PART"), ("go", "VERB")])
        vps = [s for s in extract_phrases(words) if s.kind == "VP"]
        # AUX* must immediately precede the verb; "not" breaks the chain here
        assert [s.text for s in vps] == ["go"]

        words = words_from([("could", "AUX"), ("go", "VERB"), ("not", "PART")])
        vps = [s for s in extract_phrases(words) if s.kind == "VP"]
        assert [s.text for s in vps] == ["could go not"]

    def test_svo_does_not_cross_sentences(self):
        words = words_from(
            [("the", "DET"), ("coach.", "NOUN"), ("tells", "VERB"),
             ("a", "DET"), ("story", "NOUN")]
        )
        assert sentence_spans(words) == [(0, 2), (2, 5)]
        assert [s for s in extract_phrases(words) if s.kind == "SVO"] == []

    def test_no_word_twice_in_same_kind(self):
        words = words_from(
            [("the", "DET"), ("car", "NOUN"), ("the", "DET"), ("car", "NOUN")]
        )
        nps = [s for s in extract_phrases(words) if s.kind == "NP"]
        assert [s.word_range for s in nps] == [(0, 1), (2, 3)]
        assert all(s.occurrence_count == 2 for s in nps)

    def test_text_is_word_concatenation(self):
        words = words_from(
            [("a", "DET"), ("big", "ADJ"), ("red", "ADJ"), ("car", "NOUN"),
             ("moves", "VERB")]
        )
        for span in extract_phrases(words):
            lo, hi = span.word_range
            assert span.text == " ".join(w.text for w in words[lo : hi + 1])
            assert span.start == words[lo].start
            assert span.end == words[hi].end

    def test_missing_pos_rejected(self):
        words = [TranscriptWord("car", 0.0, 0.4, None)]
        with pytest.raises(ConfigError):
            extract_phrases(words)

    def test_annotations_pass_through(self):
        words = words_from([("alpha", None), ("beta", None), ("gamma", None)])
        spans = extract_phrases(
            words, annotations=[{"kind": "NP", "words": [0, 1]}]
        )
        assert len(spans) == 1
        assert spans[0].text == "alpha beta"
        assert spans[0].kind == "NP"

    def test_bad_annotation_kind(self):
        words = words_from([("alpha", None)])
        with pytest.raises(SchemaError):
            extract_phrases(words, annotations=[{"kind": "XP", "words": [0, 0]}])

    def test_annotation_out_of_bounds(self):
        words = words_from([("alpha", None)])
        with pytest.raises(SchemaError):
            extract_phrases(words, annotations=[{"kind": "NP", "words": [0, 5]}])


def table(entries):
    dim = len(next(iter(entries.values())))
    return EmbeddingTable(
        dimension=dim, entries={k: np.array(v, float) for k, v in entries.items()}
    )


def span_of(text, kind="NP", start=0.0, phrase_id=0, count=1):
    n = len(text.split())
    return PhraseSpan(
        phrase_id=phrase_id, kind=kind, word_range=(0, n - 1), text=text,
        start=start, end=start + 0.4 * n, occurrence_count=count,
    )


class TestPhraseEmbedding:
    def test_single_word_exact_vector(self):
        t = table({"car": [1.0, 2.0]})
        vec = phrase_embedding(span_of("car"), t)
        assert vec.tolist() == [1.0, 2.0]

    def test_mean_of_two(self):
        t = table({"red": [1.0, 0.0], "car": [0.0, 1.0]})
        vec = phrase_embedding(span_of("red car"), t)
        assert vec.tolist() == [0.5, 0.5]

    def test_lowercased_lookup(self):
        t = table({"germany": [1.0, 1.0]})
        assert phrase_embedding(span_of("Germany"), t) is not None

    def test_all_oov_flagged(self):
        t = table({"car": [1.0, 0.0]})
        spans = embed_phrases([span_of("zeppelin")], t)
        assert spans[0].embedding is None
        assert not spans[0].in_vocabulary

    def test_order_invariant(self):
        t = table({"red": [1.0, 0.0], "car": [0.0, 1.0], "big": [0.5, 0.5]})
        a = phrase_embedding(span_of("red big car"), t)
        b = phrase_embedding(span_of("car red big"), t)
        assert np.allclose(a, b)

    def test_oov_tokens_skipped_in_mean(self):
        t = table({"car": [1.0, 0.0]})
        vec = phrase_embedding(span_of("zeppelin car"), t)
        assert vec.tolist() == [1.0, 0.0]


class TestFilterPhrases:
    def setup_method(self):
        self.spans = [
            span_of("alpha", kind="NP", start=0.0, phrase_id=0, count=1),
            span_of("beta", kind="VP", start=5.0, phrase_id=1, count=2),
            span_of("gamma", kind="NP", start=10.0, phrase_id=2, count=3),
        ]

    def test_no_predicates_identity(self):
        assert filter_phrases(self.spans) == self.spans

    def test_min_occurrence(self):
        out = filter_phrases(self.spans, min_occurrence=2)
        assert [s.phrase_id for s in out] == [1, 2]

    def test_time_range_by_start(self):
        out = filter_phrases(self.spans, time_range=(0.0, 6.0))
        assert [s.phrase_id for s in out] == [0, 1]

    def test_kinds(self):
        out = filter_phrases(self.spans, kinds={"NP"})
        assert [s.phrase_id for s in out] == [0, 2]

    def test_predicates_commute(self):
        a = filter_phrases(
            filter_phrases(self.spans, min_occurrence=2), kinds={"NP"}
        )
        b = filter_phrases(
            filter_phrases(self.spans, kinds={"NP"}), min_occurrence=2
        )
        c = filter_phrases(self.spans, min_occurrence=2, kinds={"NP"})
        assert a == b == c

    def test_bad_range(self):
        with pytest.raises(ConfigError):
            filter_phrases(self.spans, time_range=(5.0, 1.0))


class TestRuleTag:
    def test_closed_classes_and_default(self):
        words = [
            TranscriptWord("The", 0.0, 0.1),
            TranscriptWord("coach", 0.2, 0.3),
            TranscriptWord("tells", 0.4, 0.5),
            TranscriptWord("a", 0.6, 0.7),
            TranscriptWord("story", 0.8, 0.9),
        ]
        tags = [w.pos_tag for w in rule_tag(words)]
        assert tags == ["DET", "NOUN", "VERB", "DET", "NOUN"]

    def test_chunker_runs_on_fallback_tags(self):
        words = rule_tag(
            [TranscriptWord(t, i * 0.5, i * 0.5 + 0.4)
             for i, t in enumerate("the coach tells a story".split())]
        )
        kinds = {s.kind for s in extract_phrases(words)}
        assert kinds == {"NP", "VP", "SVO"}
