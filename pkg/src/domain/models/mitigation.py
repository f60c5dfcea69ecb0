from dataclasses import dataclass
from enum import Enum
from typing import List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field


class MitigationConfig(BaseModel):
    """Thresholds of the mitigation flow"""
    model_config = ConfigDict(frozen=True)

    top_k: Optional[int] = Field(default=10, gt=0)
    esp_threshold: float = Field(default=0.10, gt=0.0, lt=1.0)
    slzne_latency_fraction: float = Field(default=0.7, gt=0.0)
    max_cuts: int = Field(default=2, ge=0, le=2)
    dzne_scale_factors: List[float] = Field(default_factory=lambda: [1.0, 3.0, 5.0])
    zero_state_rule: Literal["verbatim", "residual"] = "verbatim"


class PipelineStage(str, Enum):
    SLZNE = "slzne"
    RZNE = "rzne"
    CUT = "cut"


@dataclass(frozen=True)
class PipelineRoute:
    """Decision taken for one circuit by the mitigation flow"""
    cut: bool
    apply_slzne: bool
    esp: float
    latency: float
    latency_threshold: float

    @property
    def stages(self) -> List[PipelineStage]:
        stages = [PipelineStage.CUT] if self.cut else []
        if self.apply_slzne:
            stages.append(PipelineStage.SLZNE)
        stages.append(PipelineStage.RZNE)
        return stages
