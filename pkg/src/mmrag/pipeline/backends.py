"""Generation backends behind a single .complete(prompt) interface."""

from __future__ import annotations

import httpx

from ..errors import ProtocolError, TransportError


class RemoteChatBackend:
    """Speaks a chat-completions style JSON protocol."""

    def __init__(self, endpoint: str, model: str, timeout: float = 60.0, transport=None):
        self.endpoint = endpoint.rstrip("/")
        self.model = model
        self.timeout = timeout
        self._transport = transport

    def complete(self, prompt: str) -> str:
        body = {"model": self.model, "messages": [{"role": "user", "content": prompt}]}
        try:
            with httpx.Client(timeout=self.timeout, transport=self._transport) as client:
                resp = client.post(self.endpoint + "/chat/completions", json=body)
                resp.raise_for_status()
                data = resp.json()
        except httpx.HTTPError as exc:
            raise TransportError(f"generation backend failed: {exc}") from exc
        try:
            return data["choices"][0]["message"]["content"]
        except (KeyError, IndexError, TypeError) as exc:
            raise ProtocolError(f"malformed chat response: {exc}") from exc


class EchoBackend:
    """Returns the prompt verbatim; used offline and in tests so citation
    extraction sees exactly the source tags that were assembled."""

    def complete(self, prompt: str) -> str:
        return prompt


class ScriptedBackend:
    """Replays a fixed response, or raises when constructed with an error."""

    def __init__(self, response: str = "", error: Exception | None = None):
        self.response = response
        self.error = error
        self.prompts: list[str] = []

    def complete(self, prompt: str) -> str:
        self.prompts.append(prompt)
        if self.error is not None:
            raise self.error
        return self.response
