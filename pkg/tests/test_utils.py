import os

import pytest

from utils.utils import (
    parse_order_policy,
    parse_sizes,
    parse_symbol_token,
    read_input,
    render_bytes,
    resolve_threads,
    write_output,
)


@pytest.mark.parametrize("token, value", [("A", 65), ("0x41", 65), ("65", 65), ("7", 55), ("0", 48), ("255", 255), (",", 44)])
def test_parse_symbol_token(token, value):
    assert parse_symbol_token(token) == value


@pytest.mark.parametrize("token", ["", "AB", "256", "0x100", "-1"])
def test_parse_symbol_token_rejects(token):
    with pytest.raises(ValueError):
        parse_symbol_token(token)


def test_parse_order_policy():
    assert parse_order_policy("freq").kind == "freq"
    assert parse_order_policy("first-seen").symbols == ()
    assert parse_order_policy("explicit:A,B,C").symbols == (65, 66, 67)
    with pytest.raises(ValueError):
        parse_order_policy("freq:A")
    with pytest.raises(ValueError):
        parse_order_policy("lexical")


def test_parse_sizes():
    assert parse_sizes("2^20,2097152") == [1 << 20, 1 << 21]
    assert parse_sizes("16, 32") == [16, 32]
    with pytest.raises(ValueError):
        parse_sizes("0")
    with pytest.raises(ValueError):
        parse_sizes("a,b")


def test_resolve_threads():
    assert resolve_threads(3) == 3
    assert resolve_threads(0) == (os.cpu_count() or 1)
    with pytest.raises(ValueError):
        resolve_threads(-1)


def test_render_bytes_is_one_char_per_byte():
    assert render_bytes(b"AB\xff") == "AB\xff"
    assert len(render_bytes(bytes(range(256)))) == 256


def test_file_round_trip(tmp_path):
    path = str(tmp_path / "blob.bin")
    write_output(path, b"\x00\x01payload")
    assert read_input(path) == b"\x00\x01payload"
