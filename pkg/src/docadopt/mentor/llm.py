"""LLM provider contract, offline stub, and production HTTP client."""
from __future__ import annotations

import hashlib
import os
import re
import threading
import time
from typing import Mapping, Protocol, runtime_checkable


class LlmError(RuntimeError):
    """The provider failed to produce a completion."""


@runtime_checkable
class LlmProvider(Protocol):
    model_id: str

    def complete(self, prompt: str) -> str: ...


def _prompt_key(prompt: str) -> str:
    return hashlib.sha256(prompt.encode("utf-8")).hexdigest()[:24]


def _between(text: str, start_marker: str, end_marker: str | None) -> str:
    start = text.find(start_marker)
    if start == -1:
        return ""
    start += len(start_marker)
    if end_marker is None:
        return text[start:]
    end = text.find(end_marker, start)
    return text[start:] if end == -1 else text[start:end]


class StubLlmProvider:
    """Deterministic offline provider.

    Responses are a pure function of (prompt, seed): canned responses
    registered by prompt take priority, otherwise the stub synthesizes a
    well-formed reply from the prompt's own PARAGRAPH and TERMS blocks.
    """

    def __init__(
        self,
        seed: int = 0,
        canned: Mapping[str, str] | None = None,
        fail: bool = False,
    ):
        self.seed = seed
        self.fail = fail
        self.model_id = f"stub-llm-s{seed}"
        self._canned: dict[str, str] = dict(canned or {})

    def can(self, prompt: str, response: str) -> "StubLlmProvider":
        """Register a canned response for an exact prompt."""
        self._canned[_prompt_key(prompt)] = response
        return self

    def complete(self, prompt: str) -> str:
        if self.fail:
            raise LlmError("stub provider configured to fail")
        key = _prompt_key(prompt)
        if key in self._canned:
            return self._canned[key]
        if "DETECTED TERMS:" in prompt:
            return self._synthesize_expansion(prompt)
        if "TERMS:" in prompt:
            return self._synthesize_explanations(prompt)
        return f"stub:{key}:{self.seed}"

    def _synthesize_expansion(self, prompt: str) -> str:
        paragraph = _between(prompt, "PARAGRAPH:\n", "\nDETECTED TERMS:")
        detected = {
            line.strip().lower()
            for line in _between(prompt, "DETECTED TERMS:\n", None).splitlines()
            if line.strip()
        }
        words = re.findall(r"[A-Za-z][A-Za-z0-9_-]{5,}", paragraph)
        fresh = []
        for w in words:
            lw = w.lower()
            if lw not in detected and lw not in (f.lower() for f in fresh):
                fresh.append(w)
        fresh.sort(key=lambda w: (-len(w), w.lower()))
        return "\n".join(fresh[:3])

    def _synthesize_explanations(self, prompt: str) -> str:
        domain = _between(prompt, "documentation in the ", " domain").strip() or "software"
        terms = [
            line.strip()
            for line in _between(prompt, "TERMS:\n", None).splitlines()
            if line.strip()
        ]
        blocks = []
        for term in terms:
            h = hashlib.sha256(f"{self.seed}:{term.lower()}".encode()).hexdigest()[:6]
            blocks.append(
                f"TERM: {term}\n"
                f"EXPLANATION: In the {domain} domain, \"{term}\" names a specific "
                f"concept this paragraph relies on; readers unfamiliar with it should "
                f"treat it as {domain} terminology (ref {h}).\n"
                f"EXAMPLES: applying {term} in a typical {domain} project\n"
                f"REFERENCES: {domain} glossary entry for {term}"
            )
        return "\n---\n".join(blocks)


class ReplayLlmProvider:
    """Replays a recorded prompt log; unknown prompts are an error.

    Used to audit an Augmentation: running the pipeline against the
    recorded exchanges must reproduce it exactly.
    """

    def __init__(self, exchanges: Mapping[str, str], model_id: str = "replay"):
        self._exchanges = dict(exchanges)
        self.model_id = model_id

    def complete(self, prompt: str) -> str:
        if prompt not in self._exchanges:
            raise LlmError("prompt not present in the recorded log")
        return self._exchanges[prompt]


class HttpChatLlmProvider:
    """Chat-completions-style HTTP client.

    The API key is read from an environment variable and never written to
    logs; response bodies pass through redaction before being recorded.
    """

    def __init__(
        self,
        base_url: str,
        model_id: str,
        api_key_env: str = "DOCADOPT_LLM_API_KEY",
        temperature: float = 0.0,
        max_tokens: int = 800,
        timeout: float = 60.0,
    ):
        self.base_url = base_url.rstrip("/")
        self.model_id = model_id
        self.api_key_env = api_key_env
        self.temperature = temperature
        self.max_tokens = max_tokens
        self.timeout = timeout

    def redact(self, text: str) -> str:
        key = os.environ.get(self.api_key_env)
        return text.replace(key, "[redacted]") if key else text

    def complete(self, prompt: str) -> str:
        import httpx

        headers = {"Content-Type": "application/json"}
        key = os.environ.get(self.api_key_env)
        if key:
            headers["Authorization"] = f"Bearer {key}"
        try:
            resp = httpx.post(
                f"{self.base_url}/chat/completions",
                json={
                    "model": self.model_id,
                    "messages": [{"role": "user", "content": prompt}],
                    "temperature": self.temperature,
                    "max_tokens": self.max_tokens,
                },
                headers=headers,
                timeout=self.timeout,
            )
        except httpx.HTTPError as exc:
            raise LlmError(f"llm request failed: {self.redact(str(exc))}") from exc
        if resp.status_code != 200:
            raise LlmError(f"llm returned status {resp.status_code}")
        try:
            return self.redact(resp.json()["choices"][0]["message"]["content"])
        except (KeyError, IndexError, TypeError, ValueError) as exc:
            raise LlmError(f"malformed llm response: {exc}") from exc


class RateLimitedProvider:
    """Serializes calls to a provider with a minimum interval between them."""

    def __init__(self, provider: LlmProvider, min_interval_seconds: float = 0.0):
        if min_interval_seconds < 0:
            raise ValueError("min_interval_seconds must be >= 0")
        self.provider = provider
        self.min_interval_seconds = min_interval_seconds
        self.model_id = provider.model_id
        self._lock = threading.Lock()
        self._last = 0.0

    def complete(self, prompt: str) -> str:
        with self._lock:
            wait = self._last + self.min_interval_seconds - time.monotonic()
            if wait > 0:
                time.sleep(wait)
            try:
                return self.provider.complete(prompt)
            finally:
                self._last = time.monotonic()
