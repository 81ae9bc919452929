#!usr/bin/env
###
#Ready made instances used throughout the documentation and the tests
###

from fractions import Fraction
from map_ties.model.model import Instance, build_instance



#==================================================
#example_one
#==================================================
def example_one(p=Fraction(1, 3)) -> Instance:
    """Four codewords whose priors q^2, 1, 1, q^-2 produce remainder ties

    Notes
    -----
    The code {0000, 0101, 0110, 0111} with prior weights q^2, 1, 1 and q^-2.
    At any p the output 0111 ties the first three codewords while agreeing
    with c_2 and c_3 on their differ sets with c_1, so it falls in the
    remainder family of c_1. At p = 1/3 the prior is (16, 4, 4, 1)/25.

    Parameters
    ----------
    p : `Fraction`
        The crossover probability. Default is 1/3 \n

    Returns
    -------
    Instance
        The instance \n

    Examples
    --------
    >>> mt.example_one().prior
    (Fraction(16, 25), Fraction(4, 25), Fraction(4, 25), Fraction(1, 25))
    """

    return build_instance(["0000", "0101", "0110", "0111"], ["q^2", "1", "1", "q^-2"], p=p)


def refinement_example(p=Fraction(1, 4)) -> Instance:
    """The 5-bit code {00000, 11001, 01111, 01101} under a uniform prior"""

    return build_instance(["00000", "11001", "01111", "01101"], p=p)


def repetition_two(p=Fraction(1, 4)) -> Instance:
    """The length two repetition code {00, 11} under a uniform prior"""

    return build_instance(["00", "11"], p=p)
