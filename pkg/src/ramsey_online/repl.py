"""Line-oriented manual play; the engine's rules referee every move."""

from __future__ import annotations

from .engine import GameTrace, Outcome, _check_edge, mono_target
from .graph import Color, ColoredGraph

HELP = "commands: draw u v | color red|blue | show | help | quit"


class Session:
    """One game where a human plays one side.

    With ``painter`` given, the human draws and the painter colors; with
    ``builder`` given, the builder draws and the human colors.  Bad human
    input is refused with a message and the game goes on.
    """

    def __init__(self, constraint, painter=None, builder=None, max_edges=64):
        if (painter is None) == (builder is None):
            raise ValueError("automate exactly one side")
        self.c = constraint
        self.painter, self.builder = painter, builder
        self.g = ColoredGraph()
        self.trace = GameTrace(constraint.spec, builder.name if builder else "human",
                               painter.name if painter else "human", max_edges=max_edges)
        self.pending = None
        self.over = False

    def _place(self, u, v, color, say):
        self.g.add_edge(u, v, color)
        self.trace.moves.append((u, v, color))
        say(f"{u}-{v} {color}")
        hit = mono_target(self.g, "C3", u, v)
        if hit is not None:
            self.trace.outcome = Outcome.BUILDER_WIN
            self.trace.witness_color, self.trace.witness = hit[0], tuple(hit[1])
            self.over = True
        elif len(self.trace.moves) >= self.trace.max_edges:
            self.trace.outcome = Outcome.BUDGET_EXHAUSTED
            self.over = True
        if self.over:
            say(self.trace.summary())

    def _builder_turn(self, say):
        from .builder import CLAIM, STOP

        m = self.builder.move(self.g)
        if m is CLAIM or m is STOP:
            self.trace.outcome = Outcome.BUILDER_ILLEGAL if m is CLAIM else Outcome.BUILDER_STOPPED
            self.trace.reason = "claimed a win with no monochromatic C3" if m is CLAIM else ""
            self.over = True
            say(self.trace.summary())
            return
        why = _check_edge(self.g, self.c, m)
        if why is not None:
            self.trace.outcome = Outcome.BUILDER_ILLEGAL
            self.trace.illegal_edge = tuple(m)
            self.trace.illegal_index = len(self.trace.moves)
            self.trace.reason = why
            self.over = True
            say(self.trace.summary())
            return
        self.pending = (int(m[0]), int(m[1]))
        say(f"builder draws {self.pending[0]}-{self.pending[1]}; color it")

    def handle(self, line: str, say) -> bool:
        """Process one command; False once the session should end."""
        words = line.split()
        if not words:
            return True
        cmd, args = words[0].lower(), words[1:]
        if cmd in ("quit", "exit", "q"):
            return False
        if cmd == "help":
            say(HELP)
        elif cmd == "show":
            moves = self.trace.moves
            say(" ".join(f"{u}-{v}:{c}" for u, v, c in moves) if moves else "(empty board)")
            if self.pending:
                say(f"pending: {self.pending[0]}-{self.pending[1]}")
        elif self.over:
            say("game over; show or quit")
        elif cmd == "draw":
            if self.builder is not None:
                say("the builder draws in this session; use color")
            elif len(args) != 2 or not all(a.lstrip("-").isdigit() for a in args):
                say("usage: draw u v")
            else:
                u, v = int(args[0]), int(args[1])
                why = _check_edge(self.g, self.c, (u, v))
                if why is not None:
                    say(f"refused: {why}")
                else:
                    self._place(u, v, self.painter(self.g, (u, v)), say)
        elif cmd == "color":
            if self.painter is not None:
                say("the painter colors in this session; use draw")
            elif len(args) != 1:
                say("usage: color red|blue")
            else:
                try:
                    color = Color.parse(args[0])
                except ValueError as exc:
                    say(str(exc))
                    return True
                u, v = self.pending
                self.pending = None
                self._place(u, v, color, say)
                if not self.over:
                    self._builder_turn(say)
        else:
            say(f"unknown command {cmd!r}; {HELP}")
        return not self.over or cmd in ("show", "help")

    def run(self, stream, say):
        say(HELP)
        if self.builder is not None:
            self._builder_turn(say)
        if self.over:
            return
        for line in stream:
            if not self.handle(line, say):
                break
        if self.trace.outcome is None:
            # abandoned before a win: recorded as an unfinished budget
            self.trace.outcome = Outcome.BUDGET_EXHAUSTED
