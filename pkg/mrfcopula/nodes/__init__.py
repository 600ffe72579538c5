"""
@fileoverview This module imports all the node classes used in a command run.
@filepath mrfcopula/nodes/__init__.py
"""

from .load_model import LoadModelNode
from .validate import ValidateNode
from .evaluate import EvaluateNode
from .sample import SampleNode
from .spearman import SpearmanNode
from .simdefault import SimDefaultNode
from .taildep import TailDepNode
from .mdp_path import MdpPathNode
from .publish import PublishNode
