"""
Solver exato para o Problema da Mochila Submodular (SKP)

Este pacote implementa um branch-and-bound em profundidade para maximizar funções
submodulares monótonas sob restrição de mochila, com quatro limitantes superiores
intercambiáveis, ramificação básica e dual, atualização preguiçosa de ganhos marginais,
regras de redução, oráculos de benchmark (COV, INF, LOC, DOM), geradores de instâncias
e uma CLI para experimentos.
"""

__version__ = "1.0.0"
