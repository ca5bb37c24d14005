"""DocMentor: LLM-assisted technical-term augmentation."""
from .augment import (
    DEFAULT_DETECT_K,
    TEMPLATE_VERSION,
    UNAVAILABLE,
    Augmentation,
    ExpandResult,
    PromptExchange,
    TechnicalTerm,
    augment,
    augment_from_detected,
    detect,
    expand,
    explain,
    occurs_verbatim,
    replay,
)
from .llm import (
    HttpChatLlmProvider,
    LlmError,
    LlmProvider,
    RateLimitedProvider,
    ReplayLlmProvider,
    StubLlmProvider,
)

__all__ = [
    "DEFAULT_DETECT_K",
    "TEMPLATE_VERSION",
    "UNAVAILABLE",
    "Augmentation",
    "ExpandResult",
    "PromptExchange",
    "TechnicalTerm",
    "augment",
    "augment_from_detected",
    "detect",
    "expand",
    "explain",
    "occurs_verbatim",
    "replay",
    "HttpChatLlmProvider",
    "LlmError",
    "LlmProvider",
    "RateLimitedProvider",
    "ReplayLlmProvider",
    "StubLlmProvider",
]
