# app/models/__init__.py
from app.models.logic_models import Formula, FormulaKind, Presentation, Signature, Term
from app.models.structure_models import GroupStructure, StructureHandle
from app.models.automorphism_models import AutomorphismSpec, AutPresentation, OrbitVerdict
from app.models.graph_product_models import GPGraph, PartialConjugation
from app.models.plane_models import PlaneNode, PlaneStore
from app.models.scott_models import ScottSentence, ThetaConjunct, ThetaPrefix, Verdict
