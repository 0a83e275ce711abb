from .bit_model import AdaptiveBitModel
from .planes import decode_plane, encode_plane
from .range_decoder import CorruptPayload, RangeDecoder, TruncatedPayload
from .range_encoder import RangeEncoder
