"""Symbolic photon ledger: which operators each photon has been through.

Alice's rotation is A, Bob's is B, the bit state is X and a photon Eve
injected is E. Operators commute, so a chain is simplified to the net
exponent of each letter, written with the most recent operator leftmost:
B(A(X)) is "BA(X)", and B^-1(A^-1(B(E))) reduces to "A⁻¹(E)".
"""
from dataclasses import dataclass
from typing import List

# Operators applied in order over one round: Alice, Bob, Alice^-1, Bob^-1.
PROTOCOL_OPERATORS = (('A', 1), ('B', 1), ('A', -1), ('B', -1))

ROW_CAPTIONS = (
    'alice sends',
    'after first interception',
    'bob returns',
    'after second interception',
    'alice forwards',
    'after third interception',
    'bob measures',
)

SUPERSCRIPT_INVERSE = '⁻¹'


def chain_label(origin, operators_applied):
    """Simplified operator chain for one photon.

    Args:
        origin: 0 for Alice's photons, p for a photon Eve injected on pass p
        operators_applied: how many protocol operators the round has applied so far

    Returns:
        str such as "BA(X)", "E" or "B⁻¹A⁻¹(E)"
    """
    # pass p injections happen after operator p has been applied
    start = origin if origin else 0
    applied = PROTOCOL_OPERATORS[start:operators_applied]

    net, last_seen = {}, {}
    for position, (letter, exponent) in enumerate(applied):
        net[letter] = net.get(letter, 0) + exponent
        last_seen[letter] = position

    survivors = [letter for letter in net if net[letter] != 0]
    survivors.sort(key=lambda letter: last_seen[letter], reverse=True)
    prefix = ''.join(
        letter + (SUPERSCRIPT_INVERSE if net[letter] < 0 else '') for letter in survivors
    )
    subject = 'E' if origin else 'X'
    return f"{prefix}({subject})" if prefix else subject


@dataclass
class LedgerRow:
    caption: str
    labels: List[str]


class Ledger:
    """Collects one row per protocol point."""

    def __init__(self):
        self.rows = []

    def record(self, caption, beam, operators_applied):
        labels = [chain_label(int(o), operators_applied) for o in beam.origins]
        self.rows.append(LedgerRow(caption, labels))

    def __iter__(self):
        return iter(self.rows)

    def __len__(self):
        return len(self.rows)


def render_ledger(rows, verdict=None):
    """Format ledger rows as a fixed-width text table."""
    rows = list(rows)
    caption_width = max((len(r.caption) for r in rows), default=0)
    cell_width = max((len(label) for r in rows for label in r.labels), default=1)
    lines = []
    for row in rows:
        cells = '  '.join(label.ljust(cell_width) for label in row.labels)
        lines.append(f"{row.caption.ljust(caption_width)} | {cells}".rstrip())
    if verdict:
        lines.append('')
        lines.append(verdict)
    return '\n'.join(lines)
