"""Offline pipeline and the .ccg artifact container.

compile_program runs parse -> support normalization -> cycle catalog ->
completion -> sd-DNNF -> compression and packages the result with the
program digest, the atom map, and per-phase timings.  The artifact is a
binary container: a JSON metadata header followed by packed node
records; loading reproduces identical evaluation results.
"""

from __future__ import annotations

import hashlib
import json
import struct
import time
from dataclasses import dataclass

from .completion import build_completion
from .compiler import DEFAULT_NODE_CAP, compile_cnf
from .counting import CompressedGraph, CountingGraph, SizeReport, compress
from .depgraph import (DEFAULT_CYCLE_CAP, CycleCatalog, CycleConstraint,
                       build_depgraph, enumerate_cycles, is_tight,
                       normalize_supports)
from .nnf import parse_nnf, smooth
from .program import AssumptionSet, Program, parse_program

MAGIC = b"ACCG"
FORMAT_VERSION = 1


class ArtifactError(ValueError):
    pass


class ArtifactMismatchError(ArtifactError):
    """Artifact digest does not match the supplied program text."""


def program_digest(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


@dataclass
class CompiledArtifact:
    digest: str
    program_text: str
    program: Program  # normalized program backing the graph
    original_atom_count: int
    original_rule_count: int
    normalization_mode: str
    normalization_added: tuple[int, ...]
    catalog: CycleCatalog
    tight: bool
    graph: CompressedGraph
    nnf_size: SizeReport
    compressed_size: SizeReport
    supported_count: int
    timings: dict[str, float]

    def atom_names(self) -> list[str]:
        """User-visible atom names (normalization auxiliaries excluded)."""
        return [a.name for a in self.program.atoms[:self.original_atom_count]]

    def parse_assumptions(self, spec: str) -> AssumptionSet:
        from .program import parse_assumption_names

        assumptions = parse_assumption_names(spec, self.program)
        for atom in assumptions.true_atoms | assumptions.false_atoms:
            if atom >= self.original_atom_count:
                raise KeyError(f"unknown atom name "
                               f"{self.program.name_of(atom)!r}")
        return assumptions


def compile_program(text: str, *, cycle_mode: str = "simple",
                    normalization: str = "full", order="index",
                    node_cap: int = DEFAULT_NODE_CAP,
                    cycle_cap: int = DEFAULT_CYCLE_CAP,
                    external_nnf: str | None = None) -> CompiledArtifact:
    """Run the whole offline phase on program source text."""
    timings: dict[str, float] = {}

    start = time.perf_counter()
    original = parse_program(text)
    timings["parse"] = time.perf_counter() - start

    start = time.perf_counter()
    normalized, normalization_record = normalize_supports(original, normalization)
    timings["normalize"] = time.perf_counter() - start

    start = time.perf_counter()
    graph = build_depgraph(normalized)
    tight = is_tight(graph)
    catalog = enumerate_cycles(graph, normalized, cycle_mode, cycle_cap)
    timings["catalog"] = time.perf_counter() - start

    start = time.perf_counter()
    cnf = build_completion(normalized)
    timings["completion"] = time.perf_counter() - start

    start = time.perf_counter()
    if external_nnf is None:
        dag = compile_cnf(cnf, order=order, node_cap=node_cap)
    else:
        dag = parse_nnf(external_nnf)
        if dag.num_vars != cnf.num_vars:
            raise ArtifactError(
                f"external NNF has {dag.num_vars} variables, the completion "
                f"has {cnf.num_vars}")
        dag = smooth(dag)
    timings["compile"] = time.perf_counter() - start

    start = time.perf_counter()
    counting = CountingGraph(dag, cnf.var_atom)
    compressed = compress(counting)
    timings["compress"] = time.perf_counter() - start

    supported = compressed.evaluate(AssumptionSet())
    return CompiledArtifact(
        digest=program_digest(text),
        program_text=text,
        program=normalized,
        original_atom_count=original.num_atoms,
        original_rule_count=len(original.rules),
        normalization_mode=normalization,
        normalization_added=normalization_record.added_atoms,
        catalog=catalog,
        tight=tight,
        graph=compressed,
        nnf_size=SizeReport(dag.node_count, dag.edge_count),
        compressed_size=SizeReport(compressed.node_count, compressed.edge_count),
        supported_count=supported,
        timings=timings,
    )


def _pack_graph(graph: CompressedGraph) -> bytes:
    parts = [struct.pack("<I", graph.node_count)]
    for i in range(graph.node_count):
        kind = graph.kinds[i]
        if kind == 0:
            parts.append(struct.pack("<bi", 0, graph.lits[i]))
        else:
            children = graph.children[graph.offsets[i]:graph.offsets[i + 1]]
            parts.append(struct.pack("<bI", kind, len(children)))
            parts.append(struct.pack(f"<{len(children)}i", *children))
    return b"".join(parts)


def _unpack_graph(buf: bytes, offset: int):
    (count,) = struct.unpack_from("<I", buf, offset)
    offset += 4
    kinds, lits, children = [], [], []
    for _ in range(count):
        (kind,) = struct.unpack_from("<b", buf, offset)
        offset += 1
        if kind == 0:
            (lit,) = struct.unpack_from("<i", buf, offset)
            offset += 4
            kinds.append(0)
            lits.append(lit)
            children.append(())
        else:
            (n,) = struct.unpack_from("<I", buf, offset)
            offset += 4
            cs = struct.unpack_from(f"<{n}i", buf, offset)
            offset += 4 * n
            kinds.append(kind)
            lits.append(0)
            children.append(tuple(cs))
    return kinds, lits, children, offset


def save_artifact(artifact: CompiledArtifact, path: str) -> None:
    graph = artifact.graph
    header = {
        "version": FORMAT_VERSION,
        "digest": artifact.digest,
        "program_text": artifact.program_text,
        "atom_names": [a.name for a in artifact.program.atoms],
        "original_atom_count": artifact.original_atom_count,
        "original_rule_count": artifact.original_rule_count,
        "normalization_mode": artifact.normalization_mode,
        "normalization_added": list(artifact.normalization_added),
        "tight": artifact.tight,
        "catalog": {
            "mode": artifact.catalog.mode,
            "source_tight": artifact.catalog.source_tight,
            "constraints": [[sorted(c.cycle), sorted(c.supports)]
                            for c in artifact.catalog.constraints],
        },
        "graph": {
            "root": graph.root,
            "num_vars": graph.num_vars,
            "var_atom": [-1 if a is None else a for a in graph.var_atom],
            "missing_program": [list(p) for p in graph.missing_program],
            "missing_aux": graph.missing_aux,
            "constant": None if graph.constant is None else str(graph.constant),
        },
        "nnf_size": [artifact.nnf_size.node_count, artifact.nnf_size.edge_count],
        "compressed_size": [artifact.compressed_size.node_count,
                            artifact.compressed_size.edge_count],
        "supported_count": str(artifact.supported_count),
        "timings": artifact.timings,
    }
    blob = json.dumps(header, separators=(",", ":")).encode("utf-8")
    with open(path, "wb") as handle:
        handle.write(MAGIC)
        handle.write(struct.pack("<HI", FORMAT_VERSION, len(blob)))
        handle.write(blob)
        handle.write(_pack_graph(graph))


def load_artifact(path: str,
                  expect_program_text: str | None = None) -> CompiledArtifact:
    with open(path, "rb") as handle:
        buf = handle.read()
    if buf[:4] != MAGIC:
        raise ArtifactError(f"{path} is not a compiled-artifact file")
    version, header_len = struct.unpack_from("<HI", buf, 4)
    if version != FORMAT_VERSION:
        raise ArtifactError(f"unsupported artifact version {version}")
    header = json.loads(buf[10:10 + header_len].decode("utf-8"))
    kinds, lits, children, _ = _unpack_graph(buf, 10 + header_len)

    if expect_program_text is not None \
            and program_digest(expect_program_text) != header["digest"]:
        raise ArtifactMismatchError(
            "artifact was compiled from a different program text")

    program = parse_program(header["program_text"])
    normalized, _record = normalize_supports(program,
                                             header["normalization_mode"])
    if [a.name for a in normalized.atoms] != header["atom_names"]:
        raise ArtifactError("artifact atom table does not match its program")

    g = header["graph"]
    graph = CompressedGraph(
        kinds, lits, children, g["root"], g["num_vars"],
        [None if a == -1 else a for a in g["var_atom"]],
        [tuple(p) for p in g["missing_program"]], g["missing_aux"],
        provenance=[],
        constant=None if g["constant"] is None else int(g["constant"]))
    catalog = CycleCatalog(
        header["catalog"]["mode"],
        tuple(CycleConstraint(frozenset(c), frozenset(s))
              for c, s in header["catalog"]["constraints"]),
        header["catalog"]["source_tight"])
    return CompiledArtifact(
        digest=header["digest"],
        program_text=header["program_text"],
        program=normalized,
        original_atom_count=header["original_atom_count"],
        original_rule_count=header["original_rule_count"],
        normalization_mode=header["normalization_mode"],
        normalization_added=tuple(header["normalization_added"]),
        catalog=catalog,
        tight=header["tight"],
        graph=graph,
        nnf_size=SizeReport(*header["nnf_size"]),
        compressed_size=SizeReport(*header["compressed_size"]),
        supported_count=int(header["supported_count"]),
        timings=header["timings"],
    )
