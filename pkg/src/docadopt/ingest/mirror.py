"""Local mirroring of documentation sites.

Crawls breadth-first from the docs URL, staying on the same origin and
(by default) under the starting path's subtree. Pages land on disk under
their site path; a JSON manifest records what was fetched. Re-running
against unchanged content rewrites nothing.
"""
from __future__ import annotations

import hashlib
import json
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Protocol
from urllib.parse import urldefrag, urljoin, urlparse

MANIFEST_NAME = ".mirror-manifest.json"
_SKIP_EXTENSIONS = frozenset({
    ".css", ".js", ".png", ".jpg", ".jpeg", ".gif", ".svg", ".ico",
    ".pdf", ".zip", ".gz", ".whl", ".woff", ".woff2", ".ttf", ".eot",
    ".json", ".xml", ".txt", ".map", ".webp", ".mp4",
})


class MirrorError(RuntimeError):
    """Raised when the root page of a site cannot be mirrored."""


@dataclass(frozen=True)
class FetchResult:
    status: int
    content: bytes
    content_type: str = "text/html"


class FetchClient(Protocol):
    def get(self, url: str) -> FetchResult: ...


class HttpxFetchClient:
    """Production fetcher; network errors surface as status 0."""

    def __init__(self, timeout: float = 20.0, user_agent: str = "docadopt-mirror/1.0"):
        self.timeout = timeout
        self.user_agent = user_agent

    def get(self, url: str) -> FetchResult:
        import httpx

        try:
            resp = httpx.get(
                url,
                timeout=self.timeout,
                follow_redirects=True,
                headers={"User-Agent": self.user_agent},
            )
        except httpx.HTTPError as exc:
            return FetchResult(status=0, content=str(exc).encode(), content_type="")
        return FetchResult(
            status=resp.status_code,
            content=resp.content,
            content_type=resp.headers.get("content-type", ""),
        )


@dataclass(frozen=True)
class MirrorPolicy:
    max_pages: int = 500
    delay_seconds: float = 0.0
    subtree_only: bool = True

    def __post_init__(self) -> None:
        if self.max_pages < 1:
            raise ValueError(f"max_pages must be >= 1, got {self.max_pages}")
        if self.delay_seconds < 0:
            raise ValueError("delay_seconds must be >= 0")


@dataclass
class MirrorManifest:
    docs_url: str
    page_count: int = 0
    byte_count: int = 0
    pages: dict[str, str] = field(default_factory=dict)  # site path -> sha256
    failures: list[str] = field(default_factory=list)

    def to_json(self) -> str:
        return json.dumps(
            {
                "docs_url": self.docs_url,
                "page_count": self.page_count,
                "byte_count": self.byte_count,
                "pages": dict(sorted(self.pages.items())),
                "failures": sorted(self.failures),
            },
            indent=2,
        )

    @classmethod
    def from_json(cls, text: str) -> "MirrorManifest":
        data = json.loads(text)
        return cls(
            docs_url=data["docs_url"],
            page_count=data["page_count"],
            byte_count=data["byte_count"],
            pages=dict(data["pages"]),
            failures=list(data["failures"]),
        )


def _local_path(site_path: str) -> str:
    path = site_path.lstrip("/")
    if not path or path.endswith("/"):
        path += "index.html"
    elif "." not in path.rsplit("/", 1)[-1]:
        path += "/index.html"
    return path


def _is_html_path(path: str) -> bool:
    name = path.rsplit("/", 1)[-1]
    if "." not in name:
        return True
    ext = "." + name.rsplit(".", 1)[-1].lower()
    return ext in (".html", ".htm") or ext not in _SKIP_EXTENSIONS


def _extract_links(raw: bytes, base_url: str) -> list[str]:
    from docadopt.ingest.htmldoc import parse_html

    root = parse_html(raw)
    links = []
    for el in root.find_all(lambda e: e.tag == "a" and bool(e.attr("href"))):
        href = el.attr("href").strip()
        if href.startswith(("mailto:", "javascript:", "#", "data:")):
            continue
        links.append(urldefrag(urljoin(base_url, href)).url)
    return links


def mirror_docs(
    docs_url: str,
    dest_dir: str | Path,
    fetch_client: FetchClient,
    policy: MirrorPolicy | None = None,
) -> MirrorManifest:
    """Mirror a documentation site into dest_dir and return the manifest.

    The root page failing is fatal (MirrorError); failures on inner pages
    are recorded in the manifest and the crawl continues.
    """
    policy = policy or MirrorPolicy()
    dest = Path(dest_dir)
    dest.mkdir(parents=True, exist_ok=True)

    start = urlparse(docs_url)
    if start.scheme not in ("http", "https") or not start.netloc:
        raise MirrorError(f"not a valid http(s) URL: {docs_url!r}")
    base_prefix = start.path if start.path.endswith("/") else start.path + "/"

    manifest = MirrorManifest(docs_url=docs_url)
    queue = [urldefrag(docs_url).url]
    seen = {queue[0]}
    first = True

    while queue and manifest.page_count < policy.max_pages:
        url = queue.pop(0)
        parsed = urlparse(url)
        if not first and policy.delay_seconds:
            time.sleep(policy.delay_seconds)
        result = fetch_client.get(url)
        if result.status != 200:
            if first:
                raise MirrorError(f"root page fetch failed ({result.status}): {url}")
            manifest.failures.append(f"{parsed.path} [status={result.status}]")
            first = False
            continue
        first = False
        if result.content_type and "html" not in result.content_type.lower():
            continue

        site_path = parsed.path or "/"
        local = _local_path(site_path)
        # "/dir/" and "/dir/index.html" share a local path; first fetch wins
        # so page_count always equals len(pages)
        if local not in manifest.pages:
            target = dest / local
            digest = hashlib.sha256(result.content).hexdigest()
            if not (target.exists() and hashlib.sha256(target.read_bytes()).hexdigest() == digest):
                target.parent.mkdir(parents=True, exist_ok=True)
                target.write_bytes(result.content)
            manifest.pages[local] = digest
            manifest.page_count += 1
            manifest.byte_count += len(result.content)

        for link in _extract_links(result.content, url):
            lp = urlparse(link)
            if lp.netloc != start.netloc or lp.scheme != start.scheme:
                continue
            if policy.subtree_only and not (lp.path.startswith(base_prefix) or lp.path == start.path):
                continue
            if not _is_html_path(lp.path):
                continue
            if link not in seen:
                seen.add(link)
                queue.append(link)

    (dest / MANIFEST_NAME).write_text(manifest.to_json())
    return manifest


def load_manifest(mirror_dir: str | Path) -> MirrorManifest:
    path = Path(mirror_dir) / MANIFEST_NAME
    if not path.exists():
        raise MirrorError(f"no mirror manifest in {mirror_dir}")
    return MirrorManifest.from_json(path.read_text())
