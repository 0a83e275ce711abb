import numpy as np
import pytest

from core.binarizer import BitPlane
from core.entropy import binary_entropy
from services.range_coder import (
    AdaptiveBitModel,
    CorruptPayload,
    RangeDecoder,
    RangeEncoder,
    TruncatedPayload,
    decode_plane,
    encode_plane,
)
from services.range_coder.bit_model import RESCALE_LIMIT
from services.range_coder.range_encoder import TOP

P_GRID = [0.0, 0.01, 0.2, 0.5, 0.8, 0.99, 1.0]


def random_plane(p_one: float, length: int, seed: int) -> BitPlane:
    rng = np.random.default_rng(seed)
    return BitPlane.from_array(rng.random(length) < p_one)


def encode_stepwise(bits):
    encoder, model = RangeEncoder(), AdaptiveBitModel()
    for bit in bits:
        encoder.encode_bit(int(bit), model)
    return encoder.finish()


def test_empty_plane_is_five_bytes():
    payload = encode_plane(BitPlane.from_string(""))
    assert payload == bytes(5)
    assert decode_plane(payload, 0).length == 0


def test_short_planes_round_trip():
    for text in ("0", "1", "11000100010010100", "10101100101", "0" * 100, "01" * 77):
        plane = BitPlane.from_string(text)
        assert decode_plane(encode_plane(plane), plane.length) == plane


@pytest.mark.parametrize("length", [1, 7, 1000, 65_537])
@pytest.mark.parametrize("p_one", P_GRID)
def test_random_planes_round_trip(p_one, length):
    plane = random_plane(p_one, length, seed=length + int(p_one * 100))
    assert decode_plane(encode_plane(plane), plane.length) == plane


@pytest.mark.parametrize("p_one", P_GRID)
def test_payload_is_close_to_the_plane_entropy(p_one):
    length = 1_000_000
    plane = random_plane(p_one, length, seed=11)
    payload = encode_plane(plane)
    entropy_bits = length * binary_entropy(plane.ones() / length)
    assert 8 * len(payload) <= entropy_bits + 0.01 * length + 512
    assert decode_plane(payload, length) == plane


def test_biased_plane_costs_at_most_64_bytes_over_its_entropy():
    length = 1_000_000
    plane = random_plane(0.2, length, seed=3)
    assert len(encode_plane(plane)) <= length * binary_entropy(plane.ones() / length) / 8 + 64


def test_constant_plane_compresses_to_a_few_bytes():
    payload = encode_plane(BitPlane.ones_of_length(100_000))
    assert len(payload) <= 200
    assert decode_plane(payload, 100_000) == BitPlane.ones_of_length(100_000)


@pytest.mark.parametrize("p_one", [0.01, 0.5, 0.9])
def test_compiled_and_stepwise_coders_write_the_same_bytes(p_one):
    plane = random_plane(p_one, 5000, seed=17)
    assert encode_plane(plane) == encode_stepwise(plane.to_array())


def test_truncated_payload_is_detected():
    plane = random_plane(0.5, 4000, seed=5)
    payload = encode_plane(plane)
    with pytest.raises(TruncatedPayload):
        decode_plane(payload[:-1], plane.length)
    with pytest.raises(TruncatedPayload):
        decode_plane(payload[: len(payload) // 2], plane.length)
    with pytest.raises(TruncatedPayload):
        decode_plane(b"\x00\x00", 0)


def test_trailing_bytes_are_corrupt():
    plane = random_plane(0.3, 500, seed=8)
    with pytest.raises(CorruptPayload):
        decode_plane(encode_plane(plane) + b"\x00", plane.length)


def test_flipped_payload_bytes_are_detected():
    plane = random_plane(0.7, 20_000, seed=21)
    payload = encode_plane(plane)
    offsets = np.random.default_rng(4).choice(len(payload), size=40, replace=False)
    for offset in [0, len(payload) - 1, *offsets]:
        damaged = bytearray(payload)
        damaged[int(offset)] ^= 0x10
        with pytest.raises((CorruptPayload, TruncatedPayload)):
            decode_plane(bytes(damaged), plane.length)


def test_model_rescales_and_stays_positive():
    model = AdaptiveBitModel()
    for _ in range(3 * RESCALE_LIMIT):
        model.update(1)
        assert model.c0 >= 1 and model.c1 >= 1
        assert model.total <= RESCALE_LIMIT
    assert model.c0 == 1


def test_encoder_and_decoder_models_stay_in_step():
    rng = np.random.default_rng(99)
    bits = (rng.random(70_000) < 0.2).astype(int).tolist()
    encoder, encoder_model = RangeEncoder(), AdaptiveBitModel()
    encoder_counts = []
    for bit in bits:
        encoder.encode_bit(bit, encoder_model)
        encoder_counts.append((encoder_model.c0, encoder_model.c1))
        assert TOP <= encoder.range < (1 << 32)
    payload = encoder.finish()

    decoder, decoder_model = RangeDecoder(payload), AdaptiveBitModel()
    for bit, counts in zip(bits, encoder_counts):
        assert decoder.decode_bit(decoder_model) == bit
        assert (decoder_model.c0, decoder_model.c1) == counts
        assert TOP <= decoder.range < (1 << 32)
    decoder.finish()
    assert decoder.position == len(payload)
    assert decoder.code == 0


def test_encoding_is_deterministic():
    plane = random_plane(0.37, 3000, seed=1)
    assert encode_plane(plane) == encode_plane(plane)
