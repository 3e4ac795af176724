#!/usr/bin/env python3

"""Scheme registry.

Both schemes expose the same interface: ``name``, ``download``,
``build_query(cfg, chooser)``, ``server_answer(query, db)``,
``decode(query, answer, cfg, side)`` and ``answer_matrix(query)``.

Routines
--------
.. autosummary::
    make_scheme
    resolve_scheme_name

----

"""

from pirrssi import field
from pirrssi import model
from pirrssi.mds import MdsScheme
from pirrssi.partition import PartitionScheme


SCHEMES = {
    'mds': MdsScheme,
    'partition': PartitionScheme,
}

SCHEME_CHOICES = ('mds', 'partition', 'auto')


def resolve_scheme_name(name, k, m1, m2):
    """Map ``'auto'`` to the scheme `pirrssi.model.select_scheme` picks."""
    if name == 'auto':
        return model.select_scheme(k, m1, m2)
    if name not in SCHEMES:
        raise ValueError("unknown scheme '%s'; choose from %s" %
                         (name, ', '.join(SCHEME_CHOICES)))
    return name


def make_scheme(name, k, m1, m2, q=None):
    """Instantiate a scheme.

    Parameters
    ----------
    name : {'mds', 'partition', 'auto'}
    k, m1, m2 : int
    q : int, optional
        Field order; defaults to the smallest prime ``>= K``.

    Returns
    -------
    MdsScheme or PartitionScheme

    Examples
    --------
    >>> make_scheme('auto', 8, 1, 3)
    PartitionScheme(K=8, M1=1, M2=3, q=11)
    >>> make_scheme('auto', 6, 2, 1).download
    3

    """

    name = resolve_scheme_name(name, k, m1, m2)
    if q is None:
        q = field.next_prime(k)
    return SCHEMES[name](k, m1, m2, q)
