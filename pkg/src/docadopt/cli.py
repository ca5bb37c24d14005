"""Command-line interface.

Every subcommand is a thin wrapper over a library call, so CLI results and
library results are interchangeable. Exit codes: 0 success, 1 operational
failure (one-line diagnostic on stderr), 2 usage error.
"""
from __future__ import annotations

import json
import sys
from dataclasses import replace
from pathlib import Path

import click

from .adoptmap import (
    LABELS,
    Thresholds,
    ToiSpec,
    build_adoption_map,
    default_tois,
    load_merged,
    predict_corpus_sections,
    predict_section,
    save_merged,
    seed_from_tois,
    write_predictions,
)
from .config import load_domains, load_sweep_grid
from .corpus import (
    CorpusBuilder,
    TokenizerConfig,
    build_index,
    load_corpus,
    load_index,
    save_corpus,
    save_index,
)
from .embed import (
    CachingProvider,
    HashingProvider,
    SentenceTransformerProvider,
    provider_from_model_id,
)
from .evalkit import SweepFixture, evaluate_map, load_groundtruth, sweep as run_sweep
from .ingest import (
    GithubSearchClient,
    HttpxFetchClient,
    MirrorError,
    MirrorPolicy,
    ProjectRef,
    ReadTheDocsResolver,
    discover_projects,
    extract_sections,
    load_manifest,
    mirror_docs,
    sentences_of,
)
from .mentor import HttpChatLlmProvider, StubLlmProvider, augment
from .topics import (
    HdbscanClusterer,
    PcaReducer,
    PipelineConfig,
    ThresholdClusterer,
    TruncateReducer,
    fit,
    load_model,
    save_model,
)


def _project_from_dict(data: dict) -> ProjectRef:
    return ProjectRef(
        oss_domain=data["oss_domain"],
        repo_id=data["repo_id"],
        docs_url=data["docs_url"],
        stars=int(data.get("stars", 0)),
    )


def _projects_from_file(path: str | Path) -> list[ProjectRef]:
    data = json.loads(Path(path).read_text(encoding="utf-8"))
    if isinstance(data, dict):
        data = [data]
    return [_project_from_dict(d) for d in data]


def _project_to_dict(p: ProjectRef) -> dict:
    return {
        "oss_domain": p.oss_domain,
        "repo_id": p.repo_id,
        "docs_url": p.docs_url,
        "stars": p.stars,
    }


def _tois_from_file(path: str | Path | None) -> tuple[ToiSpec, ...]:
    if path is None:
        return default_tois()
    data = json.loads(Path(path).read_text(encoding="utf-8"))
    return tuple(ToiSpec(name=d["name"], phrases=tuple(d["phrases"])) for d in data)


def _build_provider(name: str, dim: int, model_id: str | None, cache_dir: str | None):
    if name == "hash":
        provider = HashingProvider(dim=dim)
    elif name == "sbert":
        provider = SentenceTransformerProvider(model_id) if model_id else SentenceTransformerProvider()
    else:
        raise click.UsageError(f"unknown provider {name!r}")
    if cache_dir:
        provider = CachingProvider(provider, cache_dir)
    return provider


def _stored_provider(model_id: str, cache_dir: str | None):
    provider = provider_from_model_id(model_id)
    if cache_dir:
        provider = CachingProvider(provider, cache_dir)
    return provider


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text + "\n", encoding="utf-8")
    else:
        click.echo(text)


def _iter_mirror_pages(mirror_dir: Path):
    """Yield (site_path, raw_bytes) for a project mirror directory.

    Uses the mirror manifest when present; otherwise walks *.html files so
    hand-built fixture mirrors work too.
    """
    try:
        manifest = load_manifest(mirror_dir)
        paths = sorted(manifest.pages)
    except MirrorError:
        paths = sorted(
            str(p.relative_to(mirror_dir)) for p in mirror_dir.rglob("*.html")
        )
    for site_path in paths:
        local = mirror_dir / site_path
        if local.is_file():
            yield site_path, local.read_bytes()


@click.group()
@click.version_option(package_name="docadopt", prog_name="docadopt")
def cli():
    """Categorize OSS documentation by adoption criteria."""


# ---------------------------------------------------------------- ingest


@cli.group()
def ingest():
    """Discover projects, mirror their docs, parse mirrored pages."""


@ingest.command("discover")
@click.option("--domain", "domain", required=True, help="OSS domain to search.")
@click.option("--limit", type=int, default=10, show_default=True, help="Projects per domain.")
@click.option("--cache-dir", type=click.Path(file_okay=False), default=None, help="Search response cache.")
@click.option("--out", type=click.Path(dir_okay=False), default=None, help="Write projects JSON here.")
def ingest_discover(domain: str, limit: int, cache_dir: str | None, out: str | None):
    """Find top documented projects for an OSS domain."""
    client = GithubSearchClient(cache_dir=cache_dir)
    projects = discover_projects(domain, limit, client, ReadTheDocsResolver(), load_domains())
    _emit(json.dumps([_project_to_dict(p) for p in projects], indent=2), out)


@ingest.command("mirror")
@click.option("--project", "project_file", required=True, type=click.Path(exists=True, dir_okay=False), help="Project JSON (single object or list).")
@click.option("--dest", required=True, type=click.Path(file_okay=False), help="Mirror root directory.")
@click.option("--max-pages", type=int, default=500, show_default=True)
@click.option("--delay", type=float, default=0.0, show_default=True, help="Seconds between requests.")
def ingest_mirror(project_file: str, dest: str, max_pages: int, delay: float):
    """Mirror each project's documentation subtree to disk."""
    policy = MirrorPolicy(max_pages=max_pages, delay_seconds=delay)
    client = HttpxFetchClient()
    for project in _projects_from_file(project_file):
        target = Path(dest) / project.project_id
        manifest = mirror_docs(project.docs_url, target, client, policy)
        click.echo(f"{project.repo_id}: {manifest.page_count} pages, {manifest.byte_count} bytes")


@ingest.command("parse")
@click.option("--mirror", "mirror_dir", required=True, type=click.Path(exists=True, file_okay=False), help="One project's mirror directory.")
@click.option("--project", "project_file", type=click.Path(exists=True, dir_okay=False), default=None, help="Project JSON for provenance fields.")
@click.option("--out", type=click.Path(dir_okay=False), default=None, help="Write sections JSONL here.")
def ingest_parse(mirror_dir: str, project_file: str | None, out: str | None):
    """Parse a mirrored site into sections (one JSON object per page)."""
    mirror_path = Path(mirror_dir)
    if project_file:
        project = _projects_from_file(project_file)[0]
    else:
        project = ProjectRef(
            oss_domain="unspecified",
            repo_id=f"local/{mirror_path.name}",
            docs_url="https://example.invalid/",
            stars=0,
        )
    lines = []
    for site_path, raw in _iter_mirror_pages(mirror_path):
        page, sections = extract_sections(raw, project=project, path=site_path)
        lines.append(
            json.dumps(
                {
                    "page_id": page.page_id,
                    "path": page.path,
                    "title": page.title,
                    "sections": [
                        {
                            "section_id": s.section_id,
                            "heading_path": list(s.heading_path),
                            "text": s.text,
                        }
                        for s in sections
                    ],
                },
                ensure_ascii=False,
            )
        )
    _emit("\n".join(lines), out)


# ---------------------------------------------------------------- corpus


@cli.group()
def corpus():
    """Build and index the sectioned corpus."""


@corpus.command("build")
@click.option("--mirror", "mirror_root", required=True, type=click.Path(exists=True, file_okay=False), help="Mirror root containing one directory per project.")
@click.option("--projects", "projects_file", required=True, type=click.Path(exists=True, dir_okay=False), help="Projects JSON from `ingest discover`.")
@click.option("--out", required=True, type=click.Path(file_okay=False), help="Corpus output directory.")
def corpus_build(mirror_root: str, projects_file: str, out: str):
    """Parse every mirrored project into one corpus directory."""
    builder = CorpusBuilder()
    root = Path(mirror_root)
    for project in _projects_from_file(projects_file):
        project_dir = root / project.project_id
        if not project_dir.is_dir():
            raise click.ClickException(f"no mirror directory for {project.repo_id} at {project_dir}")
        for site_path, raw in _iter_mirror_pages(project_dir):
            page, sections = extract_sections(raw, project=project, path=site_path)
            builder.add_page(page, sections, {s.section_id: sentences_of(s) for s in sections})
    store = builder.seal()
    save_corpus(store, out)
    click.echo(
        f"corpus: {len(store.pages)} pages, {len(store.sections)} sections, "
        f"{len(store.sentences)} sentences -> {out}"
    )


@corpus.command("index")
@click.option("--corpus", "corpus_dir", required=True, type=click.Path(exists=True, file_okay=False))
@click.option("--out", type=click.Path(dir_okay=False), default=None, help="Defaults to <corpus>/index.json.")
@click.option("--ngram-len", type=int, default=1, show_default=True)
@click.option("--stopwords/--no-stopwords", default=True, show_default=True)
def corpus_index(corpus_dir: str, out: str | None, ngram_len: int, stopwords: bool):
    """Compute per-domain term statistics for tech-term detection."""
    store = load_corpus(corpus_dir)
    index = build_index(store, TokenizerConfig(ngram_len=ngram_len, stopwords_enabled=stopwords))
    target = out or str(Path(corpus_dir) / "index.json")
    save_index(index, target)
    click.echo(f"index: {index.n_domains} domains -> {target}")


# ---------------------------------------------------------------- topics


@cli.group()
def topics():
    """Fit guided topic models."""


@topics.command("fit")
@click.option("--corpus", "corpus_dir", required=True, type=click.Path(exists=True, file_okay=False))
@click.option("--out", required=True, type=click.Path(file_okay=False), help="Model output directory.")
@click.option("--domain", "domains", multiple=True, help="Restrict to these OSS domains (repeatable).")
@click.option("--provider", type=click.Choice(["hash", "sbert"]), default="hash", show_default=True)
@click.option("--provider-dim", type=int, default=64, show_default=True, help="Hashing provider dimension.")
@click.option("--provider-model", default=None, help="sentence-transformers model id.")
@click.option("--embed-cache", type=click.Path(file_okay=False), default=None)
@click.option("--reducer", type=click.Choice(["pca", "truncate"]), default="pca", show_default=True)
@click.option("--clusterer", type=click.Choice(["hdbscan", "threshold"]), default="hdbscan", show_default=True)
@click.option("--cluster-distance", type=float, default=0.5, show_default=True, help="Threshold clusterer cosine distance.")
@click.option("--tois", "tois_file", type=click.Path(exists=True, dir_okay=False), default=None, help="TOI seed file (default: packaged TOIs).")
@click.option("--seed/--no-seed", "use_seed", default=True, show_default=True, help="Guide clustering with TOI seed phrases.")
@click.option("--n-neighbors", type=int, default=None)
@click.option("--n-components", type=int, default=None)
@click.option("--min-dist", type=float, default=None)
@click.option("--min-cluster-size", type=int, default=None)
@click.option("--ngram-len", type=int, default=None)
@click.option("--stopwords/--no-stopwords", default=None)
@click.option("--reduce-frequent-words/--no-reduce-frequent-words", default=None)
@click.option("--seed-multiplier", type=float, default=None)
@click.option("--chain", default=None, help="Comma-separated representation chain, e.g. mmr,kbi.")
@click.option("--mmr-lambda", type=float, default=None)
def topics_fit(
    corpus_dir, out, domains, provider, provider_dim, provider_model, embed_cache,
    reducer, clusterer, cluster_distance, tois_file, use_seed,
    n_neighbors, n_components, min_dist, min_cluster_size, ngram_len,
    stopwords, reduce_frequent_words, seed_multiplier, chain, mmr_lambda,
):
    """Fit a topic model over corpus sentences."""
    store = load_corpus(corpus_dir)
    if domains:
        sentence_ids = []
        for d in domains:
            for section in store.sections_of_domain(d):
                sentence_ids.extend(section.sentence_ids)
        seen = set()
        sentences = []
        for sid in sentence_ids:
            if sid not in seen:
                seen.add(sid)
                sentences.append(store.sentence(sid))
    else:
        sentences = list(store.sentences)

    overrides = {
        "n_neighbors": n_neighbors,
        "n_components": n_components,
        "min_dist": min_dist,
        "min_cluster_size": min_cluster_size,
        "ngram_len": ngram_len,
        "stopwords_enabled": stopwords,
        "reduce_frequent_words": reduce_frequent_words,
        "seed_multiplier": seed_multiplier,
        "mmr_lambda": mmr_lambda,
    }
    if chain is not None:
        overrides["representation_chain"] = tuple(p.strip() for p in chain.split(",") if p.strip())
    config = replace(PipelineConfig(), **{k: v for k, v in overrides.items() if v is not None})

    embedder = _build_provider(provider, provider_dim, provider_model, embed_cache)
    reduce_impl = PcaReducer() if reducer == "pca" else TruncateReducer()
    cluster_impl = (
        HdbscanClusterer() if clusterer == "hdbscan" else ThresholdClusterer(distance_threshold=cluster_distance)
    )
    seed = seed_from_tois(_tois_from_file(tois_file)) if use_seed else None

    model = fit(sentences, embedder, reduce_impl, cluster_impl, seed=seed, config=config)
    save_model(model, out)
    sizes = {t.topic_id: t.size for t in model.topics}
    click.echo(f"model: {len(model.topics)} topics {sizes} -> {out}")


# ---------------------------------------------------------------- adoptmap


@cli.group()
def adoptmap():
    """Merge topics into adoption criteria and predict section labels."""


@adoptmap.command("merge")
@click.option("--model", "model_dir", required=True, type=click.Path(exists=True, file_okay=False))
@click.option("--out", required=True, type=click.Path(file_okay=False), help="Merged model output directory.")
@click.option("--tois", "tois_file", type=click.Path(exists=True, dir_okay=False), default=None)
@click.option("--topics-similarity", type=float, default=None)
@click.option("--reduction-min-similarity", type=float, default=None)
@click.option("--representation-size", type=int, default=None)
@click.option("--embed-cache", type=click.Path(file_okay=False), default=None)
def adoptmap_merge(model_dir, out, tois_file, topics_similarity, reduction_min_similarity, representation_size, embed_cache):
    """Build the adoption map: find, resolve, merge, reduce, re-represent."""
    model = load_model(model_dir)
    provider = _stored_provider(model.model_id, embed_cache)
    overrides = {
        "topics_similarity": topics_similarity,
        "reduction_min_similarity": reduction_min_similarity,
        "topic_representation_size": representation_size,
    }
    thresholds = replace(Thresholds(), **{k: v for k, v in overrides.items() if v is not None})
    merged = build_adoption_map(model, _tois_from_file(tois_file), provider, thresholds)
    save_merged(merged, out)
    counts = {lt.label: lt.size for lt in merged.label_topics}
    click.echo(f"merged: {counts} -> {out}")


@adoptmap.command("predict")
@click.option("--model", "model_dir", required=True, type=click.Path(exists=True, file_okay=False), help="Merged model directory.")
@click.option("--corpus", "corpus_dir", type=click.Path(exists=True, file_okay=False), default=None)
@click.option("--domain", "domains", multiple=True, help="Restrict corpus prediction to these domains.")
@click.option("--text", default=None, help="Ad-hoc section text.")
@click.option("--in", "in_file", type=click.Path(exists=True, dir_okay=False), default=None, help="File with ad-hoc section text.")
@click.option("--out", type=click.Path(dir_okay=False), default=None)
@click.option("--embed-cache", type=click.Path(file_okay=False), default=None)
def adoptmap_predict(model_dir, corpus_dir, domains, text, in_file, out, embed_cache):
    """Predict adoption-criterion labels for sections."""
    sources = [s for s in (corpus_dir, text, in_file) if s]
    if len(sources) != 1:
        raise click.UsageError("provide exactly one of --corpus, --text, --in")
    merged = load_merged(model_dir)
    provider = _stored_provider(merged.base.model_id, embed_cache)
    if corpus_dir:
        store = load_corpus(corpus_dir)
        if domains:
            sections = [s for d in domains for s in store.sections_of_domain(d)]
        else:
            sections = list(store.sections)
        predictions = predict_corpus_sections(sections, merged, provider)
        if out:
            write_predictions(predictions, out)
            click.echo(f"predictions: {len(predictions)} sections -> {out}")
        else:
            for p in predictions:
                click.echo(json.dumps(p.to_json(), ensure_ascii=False))
    else:
        content = text if text is not None else Path(in_file).read_text(encoding="utf-8")
        prediction = predict_section(content, merged, provider)
        _emit(json.dumps(prediction.to_json(), ensure_ascii=False, indent=2), out)


# ---------------------------------------------------------------- mentor


@cli.group()
def mentor():
    """LLM-assisted technical-term augmentation."""


@mentor.command("augment")
@click.option("--domain", required=True, help="OSS domain of the paragraph.")
@click.option("--in", "in_file", required=True, type=click.Path(exists=True, dir_okay=False), help="Paragraph text file.")
@click.option("--index", "index_file", required=True, type=click.Path(exists=True, dir_okay=False), help="Corpus index JSON.")
@click.option("--k", type=int, default=5, show_default=True, help="Detected terms to keep.")
@click.option("--llm", type=click.Choice(["stub", "http"]), default="stub", show_default=True)
@click.option("--stub-seed", type=int, default=0, show_default=True)
@click.option("--llm-base-url", default=None, help="Chat-completions base URL (http llm).")
@click.option("--llm-model", default=None, help="Model id for the http llm.")
@click.option("--out", type=click.Path(dir_okay=False), default=None)
def mentor_augment(domain, in_file, index_file, k, llm, stub_seed, llm_base_url, llm_model, out):
    """Detect, expand, and explain technical terms in a paragraph."""
    paragraph = Path(in_file).read_text(encoding="utf-8").strip()
    index = load_index(index_file)
    if llm == "stub":
        provider = StubLlmProvider(seed=stub_seed)
    else:
        if not llm_base_url or not llm_model:
            raise click.UsageError("--llm http requires --llm-base-url and --llm-model")
        provider = HttpChatLlmProvider(llm_base_url, llm_model)
    result = augment(paragraph, domain, index, provider, k=k)
    _emit(result.to_json(), out)


# ---------------------------------------------------------------- eval


@cli.group(name="eval")
def eval_group():
    """Evaluate predictions against groundtruth."""


@eval_group.command("run")
@click.option("--model", "model_dir", required=True, type=click.Path(exists=True, file_okay=False), help="Merged model directory.")
@click.option("--gold", "gold_file", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--corpus", "corpus_dir", required=True, type=click.Path(exists=True, file_okay=False))
@click.option("--json", "json_out", type=click.Path(dir_okay=False), default=None)
@click.option("--embed-cache", type=click.Path(file_okay=False), default=None)
def eval_run(model_dir, gold_file, corpus_dir, json_out, embed_cache):
    """Score a merged model's section predictions against groundtruth."""
    merged = load_merged(model_dir)
    provider = _stored_provider(merged.base.model_id, embed_cache)
    store = load_corpus(corpus_dir)
    groundtruth = load_groundtruth(gold_file)
    from .evalkit import gold_map, weighted_metrics

    gold = gold_map(groundtruth)
    preds, golds = [], []
    for row in groundtruth:
        preds.append(predict_section(store.section(row.section_id), merged, provider).label)
        golds.append(gold[row.section_id])
    report = weighted_metrics(preds, golds, labels=LABELS)
    click.echo(report.format_table())
    click.echo(f"weighted F1: {report.weighted_f1:.4f}")
    if json_out:
        Path(json_out).write_text(report.to_json() + "\n", encoding="utf-8")


@eval_group.command("sweep")
@click.option("--grid", "grid_file", type=click.Path(exists=True, dir_okay=False), default=None, help="Grid JSON (default: packaged threshold grids).")
@click.option("--model", "model_dir", required=True, type=click.Path(exists=True, file_okay=False), help="Unmerged topic model directory.")
@click.option("--gold", "gold_file", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--corpus", "corpus_dir", required=True, type=click.Path(exists=True, file_okay=False))
@click.option("--tois", "tois_file", type=click.Path(exists=True, dir_okay=False), default=None)
@click.option("--json", "json_out", type=click.Path(dir_okay=False), default=None)
@click.option("--embed-cache", type=click.Path(file_okay=False), default=None)
def eval_sweep(grid_file, model_dir, gold_file, corpus_dir, tois_file, json_out, embed_cache):
    """One-at-a-time hyperparameter sweep, sorted by weighted F1."""
    if grid_file:
        grid = json.loads(Path(grid_file).read_text(encoding="utf-8"))
        # sweep-grid.v1 files wrap the mapping; bare mappings also accepted
        if isinstance(grid, dict) and isinstance(grid.get("grid"), dict):
            if grid.get("format_version") != 1:
                raise click.ClickException(
                    f"unsupported sweep grid format_version: {grid.get('format_version')!r}"
                )
            grid = grid["grid"]
    else:
        grid = load_sweep_grid()
    model = load_model(model_dir)
    provider = _stored_provider(model.model_id, embed_cache)
    store = load_corpus(corpus_dir)
    fixture = SweepFixture(
        model=model,
        provider=provider,
        tois=_tois_from_file(tois_file),
        thresholds=Thresholds(),
        sections=tuple(store.sections),
        groundtruth=load_groundtruth(gold_file),
    )
    table = run_sweep(grid, fixture)
    click.echo(table.format_table())
    if json_out:
        Path(json_out).write_text(table.to_json() + "\n", encoding="utf-8")


# ---------------------------------------------------------------- serve


@cli.command("serve")
@click.option("--config", "config_file", type=click.Path(exists=True, dir_okay=False), default=None)
@click.option("--host", default=None)
@click.option("--port", type=int, default=None)
@click.option("--corpus", "corpus_dir", type=click.Path(file_okay=False), default=None)
@click.option("--model", "model_dir", type=click.Path(file_okay=False), default=None)
@click.option("--index", "index_file", type=click.Path(dir_okay=False), default=None)
def serve_cmd(config_file, host, port, corpus_dir, model_dir, index_file):
    """Serve categorized documentation and augmentation over HTTP."""
    import uvicorn

    from .service import ServiceConfig, create_app

    flags = {
        "host": host,
        "port": port,
        "corpus_dir": corpus_dir,
        "model_dir": model_dir,
        "index_file": index_file,
    }
    config = ServiceConfig.resolve(
        config_file=config_file, flags={k: v for k, v in flags.items() if v is not None}
    )
    uvicorn.run(create_app(config), host=config.host, port=config.port)


def cli_dispatch(argv: list[str]) -> int:
    """Run the CLI programmatically; returns the process exit code."""
    try:
        cli.main(args=list(argv), prog_name="docadopt", standalone_mode=False)
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except click.UsageError as exc:
        exc.show()
        return 2
    except click.ClickException as exc:
        exc.show()
        return exc.exit_code
    except (KeyboardInterrupt, EOFError):
        return 130
    except Exception as exc:  # operational failure: one-line diagnostic
        message = str(exc).splitlines()[0] if str(exc) else type(exc).__name__
        click.echo(f"docadopt: error: {message}", err=True)
        return 1
    return 0


def main() -> None:
    sys.exit(cli_dispatch(sys.argv[1:]))


if __name__ == "__main__":
    main()
