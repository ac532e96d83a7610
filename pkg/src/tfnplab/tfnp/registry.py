"""Registry-based universal problem: every registered search problem
many-one reduces into one fixed problem U.

A registry entry carries a certificate token (the desk-scale stand-in
for a totality proof) and instances of U are tuples

    (x, name, certificate, padding)

U's verifier dispatches on the name, checks the certificate against the
registered token, requires enough padding for its own linear bounds to
cover the member problem's, and then runs the member verifier on x and
the first component of the witness pair (y, eps).  Instances failing any
of these shape conditions accept every witness, so U is total outright.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from ..vm.build import DirectView, ProgramBuilder, WindowView, emit_decode_window, inline_program
from ..vm.isa import PolyBound, VerifierProgram, bits_to_int, int_to_bits
from ..vm.pack import decode_tuple, encode_tuple
from .problem import TFNPProblem, enumerate_witnesses, solve
from .reductions import ManyOneReduction, _emit_poly

_FNV_OFFSET = 2166136261
_FNV_PRIME = 16777619
U32 = 0xFFFFFFFF


def name_bits(name: str) -> str:
    return "".join(int_to_bits(ord(ch), 8) for ch in name)


def certify(key: int, name: str, bound: PolyBound) -> int:
    """Certificate token for admitting a problem under `name`."""
    h = (_FNV_OFFSET ^ (key & U32)) & U32
    for b in name.encode() + bytes([bound.c & 0xFF, bound.k & 0xFF, bound.d & 0xFF]):
        h = ((h ^ b) * _FNV_PRIME) & U32
    return h


@dataclass(frozen=True)
class RegistryEntry:
    name: str
    problem: TFNPProblem
    certificate: int


class CertificateError(ValueError):
    pass


class ProblemRegistry:
    def __init__(self, key: int = 0x5EED):
        self.key = key
        self.entries: list[RegistryEntry] = []

    def admit(self, problem: TFNPProblem, certificate: int | None = None) -> RegistryEntry:
        """Validate the certificate (issuing one when the caller is the
        authority) and add the problem."""
        expected = certify(self.key, problem.name, problem.bound)
        if certificate is None:
            certificate = expected
        if certificate != expected:
            raise CertificateError(f"bad certificate for {problem.name!r}")
        if any(e.name == problem.name for e in self.entries):
            raise ValueError(f"{problem.name!r} already registered")
        entry = RegistryEntry(problem.name, problem, certificate)
        self.entries.append(entry)
        return entry

    def find(self, name: str) -> RegistryEntry | None:
        for e in self.entries:
            if e.name == name:
                return e
        return None


def _pad_requirement(entry: RegistryEntry) -> tuple[PolyBound, PolyBound]:
    """(witness bound, padding requirement) polynomials in |x|.

    The padding must dominate both the encoded witness pair and the
    member verifier's own budget at its worst input length, so that U's
    fixed linear budget and bound suffice for every member.
    """
    p = entry.problem.bound
    bud = entry.problem.verifier.budget
    # n + p(n) <= (1 + c + d) * n^max(k,1) + (d + 1)
    amp_c = 1 + p.c + p.d
    amp_k = max(p.k, 1)
    amp_d = p.d + 1
    # bud(amp_c * n^amp_k + amp_d) <= bud.c * (amp_c + amp_d)^bud.k * n^(amp_k*bud.k) + ...
    # and every inlined instruction costs up to 16 caller steps (window views)
    base = amp_c + amp_d
    comp_c = 16 * bud.c * (base**bud.k)
    comp_k = amp_k * bud.k
    comp_d = 16 * (bud.d + bud.c * (base**bud.k))
    req = PolyBound(
        comp_c + 2 * p.c + 4,
        max(comp_k, p.k, 1),
        comp_d + 2 * p.d + 8 + 32 * (entry.problem.verifier.n_regs + 4),
    )
    return p, req


def universal_problem(registry: ProblemRegistry) -> TFNPProblem:
    """U connecting every registered problem; see the module docstring."""
    entries = list(registry.entries)
    for e in entries:
        if e.certificate != certify(registry.key, e.name, e.problem.bound):
            raise CertificateError(f"registry holds a bad certificate for {e.name!r}")

    b = ProgramBuilder("universal", 2)
    lenu, lenv, pos, bit, t, t2, res = (b.reg() for _ in range(7))
    off_x, n_x, off_nm, n_nm, off_ct, n_ct, off_pd, n_pd = (b.reg() for _ in range(8))
    ct, req, pb = (b.reg() for _ in range(3))
    off_y, n_y, off_w, n_w = (b.reg() for _ in range(4))
    scr_x = (b.reg(), b.reg(), b.reg())
    scr_y = (b.reg(), b.reg(), b.reg())
    acc, rej = b.label(), b.label()

    b.emit("LOADLEN", lenu, 0)
    b.emit("CONST", pos, 0)
    emit_decode_window(b, 0, pos, lenu, off_x, n_x, bit, t, acc)
    emit_decode_window(b, 0, pos, lenu, off_nm, n_nm, bit, t, acc)
    emit_decode_window(b, 0, pos, lenu, off_ct, n_ct, bit, t, acc)
    emit_decode_window(b, 0, pos, lenu, off_pd, n_pd, bit, t, acc)
    b.emit("EQ", t, pos, lenu)
    b.jz(t, acc)
    b.emit("EQ", t, n_ct, b.const_reg(32))
    b.jz(t, acc)
    b.emit("LOADW", ct, 0, off_ct)
    b.emit("LT", t, b.const_reg(1 << 10), n_x)
    b.jnz(t, acc)  # word guard for the bound polynomials

    for entry in entries:
        nb = name_bits(entry.name)
        next_entry = b.label()
        b.emit("EQ", t, n_nm, b.const_reg(len(nb)))
        b.jz(t, next_entry)
        for chunk_at in range(0, len(nb), 32):
            chunk = nb[chunk_at : chunk_at + 32]
            b.emit("ADD", t2, off_nm, b.const_reg(chunk_at))
            b.emit("LOADW", t, 0, t2)
            if len(chunk) < 32:
                b.emit("AND", t, t, b.const_reg((1 << len(chunk)) - 1))
            b.emit("EQ", t, t, b.const_reg(bits_to_int(chunk)))
            b.jz(t, next_entry)
        # name matched: the certificate must be the registered token
        b.emit("EQ", t, ct, b.const_reg(entry.certificate))
        b.jz(t, acc)  # invalid proof stand-in: the instance is vacuous
        wit_bound, pad_req = _pad_requirement(entry)
        _emit_poly(b, pad_req, n_x, req, t)
        b.emit("LE", t, req, n_pd)
        b.jz(t, acc)  # insufficient padding: vacuous
        # witness: the pair (y, epsilon); anything else rejects
        b.emit("LOADLEN", lenv, 1)
        b.emit("CONST", pos, 0)
        emit_decode_window(b, 1, pos, lenv, off_y, n_y, bit, t, rej)
        emit_decode_window(b, 1, pos, lenv, off_w, n_w, bit, t, rej)
        b.emit("EQ", t, pos, lenv)
        b.jz(t, rej)
        b.jnz(n_w, rej)
        _emit_poly(b, wit_bound, n_x, pb, t)
        b.emit("LE", t, n_y, pb)
        b.jz(t, rej)
        inline_program(
            b,
            entry.problem.verifier,
            [WindowView(0, off_x, n_x, scr_x), WindowView(1, off_y, n_y, scr_y)],
            res,
        )
        b.jnz(res, acc)
        b.jmp(rej)
        b.mark(next_entry)

    b.jmp(acc)  # unregistered name: vacuous instance, accept anything
    b.mark(acc)
    b.emit("ACCEPT")
    b.mark(rej)
    b.emit("REJECT")
    verifier = b.finish(budget=PolyBound(48, 1, 900))

    def split(u: str):
        parts = decode_tuple(u, 4)
        if isinstance(parts, str):
            return None
        xs, nm, cert, pad = parts
        entry = None
        for e in entries:
            if name_bits(e.name) == nm:
                entry = e
                break
        if entry is None or len(cert) != 32 or bits_to_int(cert) != entry.certificate:
            return None
        if len(xs) > 1 << 10:
            return None
        _, pad_req = _pad_requirement(entry)
        if len(pad) < pad_req(len(xs)):
            return None
        return entry, xs

    def reference(u: str) -> str:
        got = split(u)
        if got is None:
            return ""
        entry, xs = got
        return encode_tuple((solve(entry.problem, xs), ""))

    def enumerator(u: str) -> Iterator[str]:
        got = split(u)
        if got is None:
            raise ValueError("cannot enumerate witnesses of a vacuous instance")
        entry, xs = got
        for y in enumerate_witnesses(entry.problem, xs):
            yield encode_tuple((y, ""))

    return TFNPProblem(
        name="universal",
        bound=PolyBound(1, 1, 4),
        verifier=verifier,
        reference_solver=reference,
        witness_enumerator=enumerator,
    )


def embed_instance(registry: ProblemRegistry, name: str, x: str) -> str:
    entry = registry.find(name)
    if entry is None:
        raise KeyError(f"{name!r} is not registered")
    _, pad_req = _pad_requirement(entry)
    pad = "0" * pad_req(len(x))
    return encode_tuple((x, name_bits(entry.name), int_to_bits(entry.certificate, 32), pad))


def embed_reduction(registry: ProblemRegistry, name: str) -> ManyOneReduction:
    """The many-one reduction of a registered problem into U:
    f(x) = (x, name, certificate, padding), g(x, v) = first part of v."""
    entry = registry.find(name)
    if entry is None:
        raise KeyError(f"{name!r} is not registered")
    nb = name_bits(entry.name)
    cert = int_to_bits(entry.certificate, 32)
    _, pad_req = _pad_requirement(entry)

    bf = ProgramBuilder(f"embed-f-{name}", 1)
    lenx, i, bit, t, L = (bf.reg() for _ in range(5))

    def emit_const_bit(v: str):
        bf.emit("EMIT", bf.const_reg(1 if v == "1" else 0))

    # part 1: x with its unary prefix
    pfx, pfx_d, body, body_d = (bf.label() for _ in range(4))
    bf.emit("LOADLEN", lenx, 0)
    bf.emit("CONST", i, 0)
    bf.mark(pfx)
    bf.emit("EQ", t, i, lenx)
    bf.jnz(t, pfx_d)
    bf.emit("EMIT", bf.const_reg(1))
    bf.emit("ADD", i, i, bf.const_reg(1))
    bf.jmp(pfx)
    bf.mark(pfx_d)
    bf.emit("EMIT", bf.const_reg(0))
    bf.emit("CONST", i, 0)
    bf.mark(body)
    bf.emit("EQ", t, i, lenx)
    bf.jnz(t, body_d)
    bf.emit("LOADBIT", bit, 0, i)
    bf.emit("EMIT", bit)
    bf.emit("ADD", i, i, bf.const_reg(1))
    bf.jmp(body)
    bf.mark(body_d)
    # parts 2 and 3: name and certificate, fixed bits
    for v in "1" * len(nb) + "0" + nb:
        emit_const_bit(v)
    for v in "1" * 32 + "0" + cert:
        emit_const_bit(v)
    # part 4: zero padding of the required length
    _emit_poly(bf, pad_req, lenx, L, t)
    for fill, lab_names in (("1", None), ("0", None)):
        loop, done = bf.label(), bf.label()
        if fill == "0":
            bf.emit("EMIT", bf.const_reg(0))  # the prefix delimiter
        bf.emit("CONST", i, 0)
        bf.mark(loop)
        bf.emit("EQ", t, i, L)
        bf.jnz(t, done)
        bf.emit("EMIT", bf.const_reg(1 if fill == "1" else 0))
        bf.emit("ADD", i, i, bf.const_reg(1))
        bf.jmp(loop)
        bf.mark(done)
    bf.emit("ACCEPT")
    f_budget = PolyBound(12 * (pad_req.c + 2), max(pad_req.k, 1), 12 * pad_req.d + 96 + 2 * (len(nb) + 34))
    f = bf.finish(budget=f_budget)

    bg = ProgramBuilder(f"embed-g-{name}", 2)
    lenv, pos, bitg, tg, off_y, n_y = (bg.reg() for _ in range(6))
    gloop, gdone, grej = bg.label(), bg.label(), bg.label()
    bg.emit("LOADLEN", lenv, 1)
    bg.emit("CONST", pos, 0)
    emit_decode_window(bg, 1, pos, lenv, off_y, n_y, bitg, tg, grej)
    bg.emit("CONST", pos, 0)
    bg.mark(gloop)
    bg.emit("EQ", tg, pos, n_y)
    bg.jnz(tg, gdone)
    bg.emit("ADD", tg, off_y, pos)
    bg.emit("LOADBIT", bitg, 1, tg)
    bg.emit("EMIT", bitg)
    bg.emit("ADD", pos, pos, bg.const_reg(1))
    bg.jmp(gloop)
    bg.mark(grej)  # malformed pair: emit nothing
    bg.mark(gdone)
    bg.emit("ACCEPT")
    g = bg.finish(budget=PolyBound(9, 1, 48))

    return ManyOneReduction(f"embed-{name}", f, g)
