"""Discovery of documented OSS projects, one domain at a time.

The search gateway and the docs-host resolver are injected so the
pipeline runs offline in tests; production implementations talk to the
GitHub search API and Read the Docs.
"""
from __future__ import annotations

import hashlib
import json
import logging
import os
from dataclasses import dataclass
from pathlib import Path
from typing import Protocol, Sequence

from docadopt.ingest.records import ProjectRef

log = logging.getLogger(__name__)

QUERY_TEMPLATE = "topic:{domain} readthedocs.io in:wiki or readthedocs.io in:readme sort:stars"


class GatewayUnreachable(RuntimeError):
    """A remote gateway could not be reached; the call may be retried."""


@dataclass(frozen=True)
class RepoHit:
    repo_id: str
    stars: int
    repo_url: str = ""


class SearchClient(Protocol):
    def search_repos(self, query: str) -> list[RepoHit]: ...


class DocsHostResolver(Protocol):
    def resolve(self, hit: RepoHit) -> str | None: ...


def discover_projects(
    oss_domain: str,
    limit: int,
    search_client: SearchClient,
    resolver: DocsHostResolver,
    known_domains: Sequence[str],
) -> list[ProjectRef]:
    """Top projects of one OSS domain that have a resolvable docs site.

    Hits are taken in descending star order; hits whose documentation URL
    cannot be resolved are skipped with a log line rather than failing the
    domain.
    """
    if oss_domain not in known_domains:
        raise ValueError(f"unknown OSS domain: {oss_domain!r}")
    if limit < 1:
        raise ValueError(f"limit must be >= 1, got {limit}")
    query = QUERY_TEMPLATE.format(domain=oss_domain)
    hits = sorted(search_client.search_repos(query), key=lambda h: -h.stars)
    projects: list[ProjectRef] = []
    for hit in hits:
        if len(projects) >= limit:
            break
        docs_url = resolver.resolve(hit)
        if not docs_url:
            log.info("skip %s: no documentation site resolved", hit.repo_id)
            continue
        try:
            projects.append(
                ProjectRef(
                    oss_domain=oss_domain,
                    repo_id=hit.repo_id,
                    docs_url=docs_url,
                    stars=hit.stars,
                )
            )
        except ValueError as exc:
            log.info("skip %s: %s", hit.repo_id, exc)
    return projects


class GithubSearchClient:
    """GitHub repository search with an on-disk response cache.

    Reads an API token from GITHUB_TOKEN when present. Cached responses
    are keyed by the query string so repeated discovery runs are
    reproducible and cheap.
    """

    def __init__(self, cache_dir: str | Path | None = None, timeout: float = 20.0):
        self.cache_dir = Path(cache_dir) if cache_dir else None
        self.timeout = timeout

    def _cache_path(self, query: str) -> Path | None:
        if self.cache_dir is None:
            return None
        key = hashlib.sha256(query.encode("utf-8")).hexdigest()[:24]
        return self.cache_dir / f"search-{key}.json"

    def search_repos(self, query: str) -> list[RepoHit]:
        cache = self._cache_path(query)
        if cache is not None and cache.exists():
            items = json.loads(cache.read_text())
        else:
            items = self._fetch(query)
            if cache is not None:
                cache.parent.mkdir(parents=True, exist_ok=True)
                cache.write_text(json.dumps(items))
        return [
            RepoHit(
                repo_id=item["full_name"],
                stars=int(item.get("stargazers_count", 0)),
                repo_url=item.get("html_url", ""),
            )
            for item in items
        ]

    def _fetch(self, query: str) -> list[dict]:
        import httpx

        headers = {"Accept": "application/vnd.github+json"}
        token = os.environ.get("GITHUB_TOKEN")
        if token:
            headers["Authorization"] = f"Bearer {token}"
        try:
            resp = httpx.get(
                "https://api.github.com/search/repositories",
                params={"q": query, "per_page": 100},
                headers=headers,
                timeout=self.timeout,
            )
        except httpx.HTTPError as exc:
            raise GatewayUnreachable(f"github search failed: {exc}") from exc
        if resp.status_code != 200:
            raise GatewayUnreachable(f"github search returned {resp.status_code}")
        return resp.json().get("items", [])


class ReadTheDocsResolver:
    """Best-effort mapping from a repository to its Read the Docs site."""

    def __init__(self, timeout: float = 10.0):
        self.timeout = timeout

    def resolve(self, hit: RepoHit) -> str | None:
        import httpx

        slug = hit.repo_id.split("/")[-1].lower().replace("_", "-").replace(".", "")
        url = f"https://{slug}.readthedocs.io/en/latest/"
        try:
            resp = httpx.head(url, timeout=self.timeout, follow_redirects=True)
        except httpx.HTTPError:
            return None
        return url if resp.status_code == 200 else None
