"""Mixed-variance tensor spaces, sparse tensors and two-slot operators."""

from twisted_wick.tensorspace.maps import TwoSlotMap, apply_two_slot
from twisted_wick.tensorspace.tensor import (
    GradedTensor,
    Tensor,
    check_word_length,
    tensor_add,
    tensor_product,
    tensor_scale,
)
from twisted_wick.tensorspace.words import (
    E,
    E_STAR,
    BasisWord,
    Signature,
    Variance,
    format_word,
    iter_words,
)

__all__ = [
    "E",
    "E_STAR",
    "BasisWord",
    "GradedTensor",
    "Signature",
    "Tensor",
    "TwoSlotMap",
    "Variance",
    "apply_two_slot",
    "check_word_length",
    "format_word",
    "iter_words",
    "tensor_add",
    "tensor_product",
    "tensor_scale",
]
