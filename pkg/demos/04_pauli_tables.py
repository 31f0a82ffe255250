"""Conjugating Pauli products by the magic basis and by CNOTs gives signed Pauli products."""
from deflation import ConjugationKind, computed_conjugation, conjugate_pauli, format_table

for kind in ConjugationKind:
    print(format_table(kind))
    print()

# each stored entry is recomputed from the matrices
agree = sum(conjugate_pauli(k, m, n) == computed_conjugation(k, m, n)
            for k in ConjugationKind for m in range(4) for n in range(4))
print(f"{agree} of 64 stored entries agree with direct computation")
