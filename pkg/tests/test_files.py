import pytest

from recmon.cli.files import dump_lts, load_lts, parse_lts, read_alphabet_header
from recmon.errors import AlphabetError, InputError
from recmon.semantics.lts import lts_from_process
from recmon.syntax.alphabet import Alphabet
from recmon.syntax.parser import parse_process


def test_two_state_file(data_dir):
    lts = load_lts(data_dir / "two_state.lts")
    assert lts.initial == "s0"
    assert lts.alphabet.actions == ("a", "b")
    assert lts.weak_successors("s0", "b") == {"s1", "s0"}


def test_header_is_optional_when_alphabet_given(ab):
    lts = parse_lts("initial: x\nx -a-> y  # comment\n", ab)
    assert lts.transitions == {("x", "a", "y")}
    assert read_alphabet_header("initial: x\n") is None


def test_header_must_match_given_alphabet():
    with pytest.raises(AlphabetError):
        parse_lts("alphabet: a b\ninitial: x\n", Alphabet.of(["a"]))


@pytest.mark.parametrize("text, error", [
    ("initial: x\n", AlphabetError),
    ("alphabet: a\nx -a-> y\n", InputError),
    ("alphabet: a\ninitial: x\nx a y\n", InputError),
    ("alphabet: a\ninitial: x\nx -c-> y\n", AlphabetError),
])
def test_malformed_files(text, error):
    with pytest.raises(error):
        parse_lts(text)


def test_missing_file(tmp_path):
    with pytest.raises(InputError):
        load_lts(tmp_path / "absent.lts")


def test_dump_renames_process_states(ab):
    lts = lts_from_process(parse_process("rec x.(a.b.x + a.nil)", ab), ab)
    text = dump_lts(lts)
    assert "initial: s0" in text
    again = parse_lts(text)
    assert len(again.states) == len(lts.states)
    assert len(again.transitions) == len(lts.transitions)


def test_dump_keeps_plain_names(data_dir):
    lts = load_lts(data_dir / "example_p.lts")
    assert parse_lts(dump_lts(lts)).transitions == lts.transitions
