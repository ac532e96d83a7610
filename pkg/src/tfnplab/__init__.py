"""tfnplab: executable workbench for total polynomial search problems,
Herbrand consistency search, propositional proof systems, and disjoint
NP/coNP pairs, with every construction checkable on small instances.
"""

__version__ = "0.1.0"
