"""Linear-vertex kernels and exact solvers for packing vertex-disjoint r-stars."""

# Copyright 2024, star-kernel developers.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
from .cograph import is_cograph, solve_cograph
from .graph import ContractError, Graph, GraphFormatError
from .kernel import PackingInstance, kernelize
from .packing import Star, StarPacking, greedy_maximal_packing, optimal_packing
from .reduction3dm import ThreeDMInstance, reduce_3dm

try:
    # NOTE: the `version.py` file must not be present in the git repository
    #   as it is generated by setuptools at install time
    from .version import __version__
except ImportError:  # pragma: no cover
    # Local copy or not installed with setuptools
    __version__ = "999"

__all__ = [
    "__version__",
    "ContractError",
    "Graph",
    "GraphFormatError",
    "PackingInstance",
    "Star",
    "StarPacking",
    "ThreeDMInstance",
    "greedy_maximal_packing",
    "is_cograph",
    "kernelize",
    "optimal_packing",
    "reduce_3dm",
    "solve_cograph",
]
