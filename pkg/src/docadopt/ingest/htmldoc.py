"""Tolerant HTML document tree built on the stdlib parser.

Real-world documentation pages are frequently malformed (unclosed tags,
stray end tags). The builder never raises on such input; it closes open
elements as needed and ignores unmatched end tags.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from html.parser import HTMLParser
from typing import Callable, Iterator, Union

VOID_TAGS = frozenset({
    "area", "base", "br", "col", "embed", "hr", "img", "input",
    "link", "meta", "param", "source", "track", "wbr",
})

# Elements auto-closed by an opening tag of the same kind (lenient subset
# of the HTML5 rules; enough for documentation markup).
_SELF_NESTING = frozenset({"p", "li", "dt", "dd", "option", "tr", "td", "th"})


@dataclass
class Element:
    tag: str
    attrs: dict[str, str] = field(default_factory=dict)
    children: list[Union["Element", str]] = field(default_factory=list)

    @property
    def classes(self) -> frozenset[str]:
        return frozenset((self.attrs.get("class") or "").split())

    def attr(self, name: str) -> str:
        return self.attrs.get(name, "")

    def iter_elements(self) -> Iterator["Element"]:
        """This element and all element descendants, document order."""
        yield self
        for child in self.children:
            if isinstance(child, Element):
                yield from child.iter_elements()

    def find(self, pred: Callable[["Element"], bool]) -> Union["Element", None]:
        for el in self.iter_elements():
            if pred(el):
                return el
        return None

    def find_all(self, pred: Callable[["Element"], bool]) -> list["Element"]:
        return [el for el in self.iter_elements() if pred(el)]

    def text(self) -> str:
        """Concatenated text content of the subtree."""
        parts: list[str] = []
        for child in self.children:
            if isinstance(child, str):
                parts.append(child)
            else:
                parts.append(child.text())
        return "".join(parts)


class _TreeBuilder(HTMLParser):
    def __init__(self) -> None:
        super().__init__(convert_charrefs=True)
        self.root = Element("#document")
        self.stack = [self.root]

    def handle_starttag(self, tag: str, attrs: list[tuple[str, str | None]]) -> None:
        if tag in _SELF_NESTING and self.stack[-1].tag == tag:
            self.stack.pop()
        node = Element(tag, {k: (v or "") for k, v in attrs})
        self.stack[-1].children.append(node)
        if tag not in VOID_TAGS:
            self.stack.append(node)

    def handle_startendtag(self, tag: str, attrs: list[tuple[str, str | None]]) -> None:
        self.stack[-1].children.append(Element(tag, {k: (v or "") for k, v in attrs}))

    def handle_endtag(self, tag: str) -> None:
        for i in range(len(self.stack) - 1, 0, -1):
            if self.stack[i].tag == tag:
                del self.stack[i:]
                return
        # unmatched end tag: ignore

    def handle_data(self, data: str) -> None:
        if data:
            self.stack[-1].children.append(data)


def parse_html(raw: bytes | str) -> Element:
    """Parse raw HTML into a document tree. Never raises on malformed input."""
    if isinstance(raw, bytes):
        raw = raw.decode("utf-8", errors="replace")
    builder = _TreeBuilder()
    builder.feed(raw)
    builder.close()
    return builder.root
