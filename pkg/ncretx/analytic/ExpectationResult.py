# -*- coding: utf-8 -*-
import math
from collections import OrderedDict
from typing import List, Mapping, Optional


class ExpectationResult(object):
    """An expected count together with the additive terms it is made of.

    terms sum to value; extras are auxiliary quantities that do not add up."""

    def __init__(self, value: float, terms: Optional[Mapping[str, float]]=None,
                 extras: Optional[Mapping[str, float]]=None):
        if value < 0.0:
            if value < -1e-12:
                raise ValueError("expected count cannot be negative, got %r" % value)
            value = 0.0
        self.value = float(value)
        self.terms = OrderedDict(terms or ())
        self.extras = OrderedDict(extras or ())
        assert not self.terms or math.isclose(sum(self.terms.values()), self.value, rel_tol=1e-9, abs_tol=1e-12), \
            "terms %r do not sum to %r" % (dict(self.terms), self.value)

    def lines(self, name: str) -> List[str]:
        res = ["%s=%r" % (name, self.value)]
        res += ["%s.%s=%r" % (name, k, v) for k, v in self.terms.items()]
        res += ["%s.%s=%r" % (name, k, v) for k, v in self.extras.items()]
        return res

    def __float__(self):
        return self.value

    def __str__(self):
        return "\n".join(self.lines("value"))

    def __repr__(self):
        return "ExpectationResult(%r)" % self.value
