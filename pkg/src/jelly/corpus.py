"""Deterministic synthetic RDF corpora for benchmarks and size checks."""

from __future__ import annotations

import random

from .terms import XSD_STRING, Iri, Literal, Triple

XSD = "http://www.w3.org/2001/XMLSchema#"


def namespaces(count: int) -> list[str]:
    out = []
    for i in range(count):
        if i % 2:
            out.append(f"http://data{i}.example.org/ontology#")
        else:
            out.append(f"http://data{i}.example.org/resource/")
    return out


def synthetic_triples(
    n_triples: int = 100_000,
    n_subjects: int = 1_000,
    n_predicates: int = 50,
    n_objects: int = 2_000,
    n_namespaces: int = 10,
    seed: int = 42,
) -> list[Triple]:
    """Subject-grouped triples over fixed subject, predicate and object vocabularies.

    Roughly two thirds of the object vocabulary are IRIs and the rest are
    literals (plain, language-tagged and typed). All IRIs live under
    ``n_namespaces`` shared namespaces.
    """
    rng = random.Random(seed)
    ns = namespaces(n_namespaces)
    subjects = [Iri(f"{ns[i % n_namespaces]}entity{i}") for i in range(n_subjects)]
    predicates = [Iri(f"{ns[(i * 7) % n_namespaces]}property{i}") for i in range(n_predicates)]
    objects = []
    for i in range(n_objects):
        r = i % 6
        if r < 4:
            objects.append(Iri(f"{ns[(i * 3) % n_namespaces]}thing{i}"))
        elif r == 4:
            objects.append(Literal(f"value number {i}", language="en" if i % 12 == 4 else None))
        else:
            dt = (XSD + "integer", XSD + "decimal", XSD + "date", XSD_STRING)[i % 4]
            objects.append(Literal(str(i * 17), datatype=dt))

    per_subject, extra = divmod(n_triples, n_subjects)
    out = []
    for si, subject in enumerate(subjects):
        count = per_subject + (1 if si < extra else 0)
        preds = sorted(rng.sample(range(n_predicates), min(n_predicates, max(1, count // 2))))
        for j in range(count):
            p = predicates[preds[(j * len(preds)) // count]]
            o = objects[rng.randrange(n_objects)]
            out.append(Triple(subject, p, o))
    return out
