"""Pure Nash equilibria in graphical games via hypergraph homomorphisms and tree decompositions."""
