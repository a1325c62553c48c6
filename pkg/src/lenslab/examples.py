"""Worked examples: co-design opinions, a typed text-editor machine, BIOS/OS.

All three are small enough for the oracles.  The editor keyboard is a finite
transition monoid rather than a free monoid; see :func:`build_state_machine_example`.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .constructions import EqualiserResult, equaliser_lens, factorise_lens, FactorisationResult
from .errors import DomainMismatch, MalformedError
from .fincat import FinCat, Functor, chain, opposite, product_cat
from .lens import Lens, compose_lens, lens_from_dof, validate_lens
from .seeds import bool_poset, functionality_poset, resource_poset

FIXTURE_DIR = Path(__file__).parent / "data" / "fixtures" / "v1"


def fixture_names() -> list[str]:
    return sorted(p.stem for p in FIXTURE_DIR.glob("*.json"))


def load_fixture(name: str):
    """Payload of a bundled fixture document, e.g. ``load_fixture("codesign")``."""
    from .io import load_document
    return load_document(FIXTURE_DIR / f"{name}.json").payload

# ---------------------------------------------------------------------------
# co-design


@dataclass(frozen=True, eq=False)
class CoDesignProblem:
    functionality: FinCat
    resource: FinCat
    bool: FinCat
    opinion: Lens

    @property
    def space(self) -> FinCat:
        return self.opinion.source

    def feasible(self) -> list[str]:
        return [x for x in self.space.objects if self.opinion.functor.on_object(x) == "true"]

    def infeasible(self) -> list[str]:
        return [x for x in self.space.objects if self.opinion.functor.on_object(x) == "false"]

    def strategy(self) -> dict[str, str]:
        """Where each infeasible pair is sent by the lift."""
        up = self.bool.hom("false", "true")[0]
        return {x: self.space.morphism(self.opinion.lift_of(x, up)).tgt for x in self.infeasible()}


def design_pair(f: str, r: str) -> str:
    return f"({f},{r})"


def make_codesign(F: FinCat, R: FinCat, feasible: Iterable[str], strategy: Mapping[str, str]) -> CoDesignProblem:
    """Opinion lens on ``F^op x R`` from a feasible set and a repair for each
    infeasible pair (both given as ``"(f,r)"`` object names)."""
    X = product_cat(opposite(F), R).cat
    Bool = bool_poset()
    feasible = set(feasible)
    value = {x: ("true" if x in feasible else "false") for x in X.objects}
    mmap = {}
    for m in X.morphisms:
        s, t = value[m.src], value[m.tgt]
        hom = Bool.hom(s, t)
        if not hom:
            raise MalformedError(f"feasibility is not monotone along {m.name}")
        mmap[m.name] = hom[0]
    functor = Functor(X, Bool, value, mmap)
    up = Bool.hom("false", "true")[0]
    lift = {}
    for x in X.objects:
        lift[(x, Bool.identity(value[x]))] = X.identity(x)
        if value[x] == "false":
            target = strategy[x]
            hom = X.hom(x, target)
            if not hom or value[target] != "true":
                raise MalformedError(f"{x} cannot be repaired to {target}")
            lift[(x, up)] = hom[0]
    return CoDesignProblem(F, R, Bool, validate_lens(Lens(functor, lift)))


CODESIGN_FEASIBLE = ["(slow,cheap)", "(slow,expensive)", "(average,expensive)", "(fast,expensive)"]


def build_codesign_example() -> CoDesignProblem:
    """Cheap rides are slow; an infeasible pair is fixed by paying more."""
    return make_codesign(functionality_poset(), resource_poset(), CODESIGN_FEASIBLE, {
        "(average,cheap)": "(average,expensive)",
        "(fast,cheap)": "(fast,expensive)",
    })


def alternative_strategy() -> CoDesignProblem:
    """Same feasibility; ``(average,cheap)`` is fixed by slowing down instead."""
    return make_codesign(functionality_poset(), resource_poset(), CODESIGN_FEASIBLE, {
        "(average,cheap)": "(slow,cheap)",
        "(fast,cheap)": "(fast,expensive)",
    })


def disagreeing_experts() -> tuple[CoDesignProblem, CoDesignProblem]:
    """Two opinions that agree nowhere, on an empty design space.

    On a nonempty space two opinions always share a jointly feasible object
    (repairing along one lift and then the other reaches one), and the
    jointly feasible objects always survive equalisation.  Total
    disagreement therefore needs an empty space; here no functionality
    grade is on offer.
    """
    F = chain([], label="F0")
    R = resource_poset()
    return make_codesign(F, R, [], {}), make_codesign(F, R, [], {})


def jointly_feasible(p: CoDesignProblem, q: CoDesignProblem) -> list[str]:
    return [x for x in p.feasible() if x in set(q.feasible())]


def equalise_experts(p: CoDesignProblem, q: CoDesignProblem) -> EqualiserResult:
    if p.space != q.space or p.bool != q.bool:
        raise DomainMismatch("the two opinions are about different design problems")
    return equaliser_lens(p.opinion, q.opinion)


# ---------------------------------------------------------------------------
# typed state machine


KEYS = (">", "†", "v", "w")   # right arrow, command, then the two letters used
TEXT_CAP = 1
ALPHABET = ("w",)


@dataclass(frozen=True)
class EditorState:
    mode: str
    text: str
    cursor: int
    buffer: str = ""

    @property
    def name(self) -> str:
        body = self.text[:self.cursor] + "^" + self.text[self.cursor:]
        suffix = f"[{self.buffer}]" if self.mode == "write" else ""
        return f"{self.mode}({body}){suffix}"


def editor_states() -> list[EditorState]:
    texts = [""] + [a for a in ALPHABET]
    out = []
    for mode in ("view", "ctrl"):
        out += [EditorState(mode, t, c) for t in texts for c in range(len(t) + 1)]
    out += [EditorState("write", t, c, b) for t in texts for c in range(len(t) + 1) for b in [""] + list(ALPHABET)]
    return out


def editor_step(s: EditorState, key: str) -> EditorState:
    """One keystroke.  Failed commands in ctrl mode stay in ctrl."""
    if s.mode == "view":
        if key == ">":
            return EditorState("view", s.text, min(s.cursor + 1, len(s.text)))
        if key == "†":
            return EditorState("ctrl", s.text, s.cursor)
        return s
    if s.mode == "ctrl":
        if key == "v":
            return EditorState("view", s.text, s.cursor)
        if key == "w":
            return EditorState("write", s.text, s.cursor, "")
        return s
    if key in ALPHABET:
        return EditorState("write", s.text, s.cursor, (s.buffer + key)[:TEXT_CAP])
    if key == "†":
        text = (s.text[:s.cursor] + s.buffer + s.text[s.cursor:])[:TEXT_CAP]
        return EditorState("ctrl", text, min(s.cursor + len(s.buffer), len(text)))
    return s


MODE_STEP = {
    ("view", "†"): "ctrl", ("ctrl", "v"): "view", ("ctrl", "w"): "write", ("write", "†"): "ctrl",
}


def mode_step(mode: str, key: str) -> str:
    return MODE_STEP.get((mode, key), mode)


def transition_monoid(n: int, generators: Sequence[tuple[str, tuple[int, ...]]]):
    """Elements reachable from the identity, named by shortlex-least word.

    Returns ``(words, maps)`` in discovery order; ``"1"`` names the identity.
    """
    ident = tuple(range(n))
    seen = {ident: "1"}
    order = [ident]
    frontier = [ident]
    while frontier:
        nxt = []
        for f in frontier:
            for key, g in generators:
                h = tuple(g[f[x]] for x in range(n))
                if h not in seen:
                    seen[h] = (seen[f] if seen[f] != "1" else "") + key
                    order.append(h)
                    nxt.append(h)
        frontier = nxt
    return [seen[f] for f in order], order


def action_category(states: Sequence[str], words: Sequence[str], acts: Sequence[tuple[int, ...]],
                    label: str) -> FinCat:
    """Objects ``states``; a morphism ``"x:word"`` from x to ``word . x`` for every element."""
    element = {a: i for i, a in enumerate(acts)}
    n = len(states)
    mors, comp = [], {}
    name = lambda x, i: f"{states[x]}:{words[i]}"
    for x in range(n):
        for i, act in enumerate(acts):
            mors.append((name(x, i), states[x], states[act[x]]))
    for x in range(n):
        for i, f in enumerate(acts):
            y = f[x]
            for j, g in enumerate(acts):
                gf = element[tuple(g[f[z]] for z in range(len(f)))]
                comp[(name(y, j), name(x, i))] = name(x, gf)
    return FinCat(list(states), mors, {s: f"{s}:1" for s in states}, comp, label=label)


@dataclass(frozen=True, eq=False)
class MachineStack:
    state: FinCat
    mode: FinCat
    keyboard: FinCat
    state_lens: Lens
    mode_lens: Lens
    states: tuple[EditorState, ...] = ()

    @property
    def composite(self) -> Lens:
        return compose_lens(self.state_lens, self.mode_lens)

    def fibre(self, mode: str) -> list[str]:
        return [s for s in self.state.objects if self.state_lens.functor.on_object(s) == mode]

    def key(self, word: str) -> str:
        """Keyboard element for a key sequence, in typing order."""
        kb = self.keyboard
        out = kb.identity("*")
        for k in word:
            try:
                kb.mindex(k)
            except KeyError:
                raise KeyError(f"no key {k!r} on this keyboard") from None
            out = kb.then(out, k)
        return out

    def replay(self, start: str, script: str) -> list[str]:
        """States visited while typing ``script`` from ``start``."""
        lens = self.composite
        path = [start]
        for k in script:
            w = lens.lift_of(path[-1], self.key(k))
            path.append(self.state.morphism(w).tgt)
        return path


def build_state_machine_example() -> MachineStack:
    """STATE <=> MODE <=> KEYBOARD for an editor with a one-letter alphabet.

    Text is capped at one character, so there are three view states, three
    ctrl states and six write states.  The keyboard is the monoid of
    transformations the four keys generate on those twelve states.
    """
    states = editor_states()
    index = {s: i for i, s in enumerate(states)}
    gens = [(k, tuple(index[editor_step(s, k)] for s in states)) for k in KEYS]
    words, acts = transition_monoid(len(states), gens)
    mul = {}
    element = {a: i for i, a in enumerate(acts)}
    for i, f in enumerate(acts):
        for j, g in enumerate(acts):
            mul[(words[j], words[i])] = words[element[tuple(g[f[z]] for z in range(len(states)))]]
    keyboard = FinCat(["*"], [(w, "*", "*") for w in words], {"*": "1"}, mul, label="KEYBOARD")

    modes = ["view", "ctrl", "write"]
    # the mode action is a quotient of the state action
    mode_of = [modes.index(s.mode) for s in states]
    mode_acts = []
    for act in acts:
        table = [None] * len(modes)
        for x, y in enumerate(act):
            prev = table[mode_of[x]]
            if prev is not None and prev != mode_of[y]:
                raise MalformedError("mode transitions are not determined by the mode")
            table[mode_of[x]] = mode_of[y]
        mode_acts.append(tuple(table))
    names = [s.name for s in states]
    STATE = action_category(names, words, acts, "STATE")
    MODE = _mode_category(modes, words, mode_acts, acts)

    g = Functor(MODE, keyboard, {x: "*" for x in modes},
                {f"{x}:{w}": w for x in modes for w in words})
    f = Functor(STATE, MODE, {names[x]: modes[mode_of[x]] for x in range(len(states))},
                {f"{names[x]}:{w}": f"{modes[mode_of[x]]}:{w}" for x in range(len(states)) for w in words})
    return MachineStack(STATE, MODE, keyboard, lens_from_dof(f), lens_from_dof(g), tuple(states))


def _mode_category(modes, words, mode_acts, acts) -> FinCat:
    n = len(acts[0])
    element = {a: i for i, a in enumerate(acts)}
    name = lambda x, i: f"{modes[x]}:{words[i]}"
    mors = [(name(x, i), modes[x], modes[mode_acts[i][x]]) for x in range(len(modes)) for i in range(len(acts))]
    comp = {}
    for x in range(len(modes)):
        for i, f in enumerate(acts):
            y = mode_acts[i][x]
            for j, g in enumerate(acts):
                gf = element[tuple(g[f[z]] for z in range(n))]
                comp[(name(y, j), name(x, i))] = name(x, gf)
    return FinCat(modes, mors, {x: f"{x}:1" for x in modes}, comp, label="MODE")


# ---------------------------------------------------------------------------
# BIOS / OS


def bios_os_category() -> FinCat:
    """BIOS --boot--> OS with an idempotent ``op`` on OS absorbing ``boot``."""
    return FinCat(
        ["BIOS", "OS"],
        [("1_BIOS", "BIOS", "BIOS"), ("1_OS", "OS", "OS"), ("boot", "BIOS", "OS"), ("op", "OS", "OS")],
        {"BIOS": "1_BIOS", "OS": "1_OS"},
        {("1_BIOS", "1_BIOS"): "1_BIOS", ("1_OS", "1_OS"): "1_OS", ("boot", "1_BIOS"): "boot",
         ("1_OS", "boot"): "boot", ("op", "1_OS"): "op", ("1_OS", "op"): "op",
         ("op", "op"): "op", ("op", "boot"): "boot"},
        label="BIOS->OS",
    )


def everyday_category() -> FinCat:
    """One object; two everyday operations s, t with x . y = x."""
    els = ["1", "s", "t"]
    mul = {(g, f): (f if g == "1" else g) for g in els for f in els}
    return FinCat(["everyday"], [(e, "everyday", "everyday") for e in els], {"everyday": "1"}, mul,
                  label="EVERYDAY")


def build_bios_os_example() -> Lens:
    A, B = everyday_category(), bios_os_category()
    F = Functor(A, B, {"everyday": "OS"}, {"1": "1_OS", "s": "op", "t": "op"})
    return validate_lens(Lens(F, {("everyday", "1_OS"): "1", ("everyday", "op"): "s"}))


def bios_os_factorisation() -> FactorisationResult:
    return factorise_lens(build_bios_os_example())
