"""Mirroring against an in-memory site; no network anywhere."""

import hashlib

import pytest

from docadopt.ingest.mirror import (
    MANIFEST_NAME,
    FetchResult,
    MirrorError,
    MirrorManifest,
    MirrorPolicy,
    load_manifest,
    mirror_docs,
)


class FakeSite:
    def __init__(self, pages: dict[str, str], netloc: str = "docs.test"):
        self.pages = pages
        self.netloc = netloc
        self.requests: list[str] = []

    def get(self, url: str) -> FetchResult:
        self.requests.append(url)
        from urllib.parse import urlparse

        path = urlparse(url).path
        body = self.pages.get(path)
        if body is None:
            return FetchResult(status=404, content=b"gone")
        return FetchResult(status=200, content=body.encode())


SITE = {
    "/en/latest/": "<a href='index.html'>i</a><a href='guide/install.html'>g</a>",
    "/en/latest/index.html": "<a href='/en/latest/'>root</a><a href='api.html'>api</a>",
    "/en/latest/api.html": "<p>api</p><a href='https://elsewhere.test/x.html'>out</a>",
    "/en/latest/guide/install.html": "<p>install</p><a href='../missing.html'>m</a>",
    "/outside.html": "<p>should never be fetched</p>",
}


def test_mirror_crawls_subtree_and_writes_manifest(tmp_path):
    site = FakeSite(SITE)
    manifest = mirror_docs("https://docs.test/en/latest/", tmp_path, site)

    # "/en/latest/" and "/en/latest/index.html" collapse to one local file
    assert set(manifest.pages) == {
        "en/latest/index.html",
        "en/latest/api.html",
        "en/latest/guide/install.html",
    }
    assert manifest.page_count == len(manifest.pages) == 3
    # missing.html 404s into failures; crawl continues
    assert any("missing.html" in f for f in manifest.failures)
    # outside-netloc and outside-subtree links never fetched
    assert all("elsewhere" not in u and "outside" not in u for u in site.requests)

    for local, digest in manifest.pages.items():
        blob = (tmp_path / local).read_bytes()
        assert hashlib.sha256(blob).hexdigest() == digest
    assert manifest.byte_count == sum(
        len((tmp_path / p).read_bytes()) for p in manifest.pages
    )

    again = load_manifest(tmp_path)
    assert again == manifest


def test_root_failure_is_fatal(tmp_path):
    site = FakeSite({})
    with pytest.raises(MirrorError, match="root page"):
        mirror_docs("https://docs.test/en/latest/", tmp_path, site)
    with pytest.raises(MirrorError, match="not a valid"):
        mirror_docs("ftp://docs.test/x/", tmp_path, site)


def test_max_pages_budget(tmp_path):
    pages = {"/d/": "".join(f"<a href='p{i}.html'>x</a>" for i in range(10))}
    for i in range(10):
        pages[f"/d/p{i}.html"] = "<p>leaf</p>"
    site = FakeSite(pages)
    manifest = mirror_docs(
        "https://docs.test/d/", tmp_path, site, policy=MirrorPolicy(max_pages=3)
    )
    assert manifest.page_count == 3


def test_manifest_round_trip_and_missing_manifest(tmp_path):
    m = MirrorManifest(docs_url="https://d.test/x/")
    m.pages["a.html"] = "0" * 64
    m.page_count = 1
    m.byte_count = 5
    m.failures.append("b.html [status=500]")
    assert MirrorManifest.from_json(m.to_json()) == m
    with pytest.raises(MirrorError, match="no mirror manifest"):
        load_manifest(tmp_path)


def test_checked_in_fixture_manifests_match_page_bytes(fixtures_dir):
    for site_dir in sorted((fixtures_dir / "sites").iterdir()):
        manifest = load_manifest(site_dir)
        assert manifest.page_count == len(manifest.pages)
        for local, digest in manifest.pages.items():
            blob = (site_dir / local).read_bytes()
            assert hashlib.sha256(blob).hexdigest() == digest, f"{site_dir.name}/{local} drifted"
        assert (site_dir / MANIFEST_NAME).exists()
