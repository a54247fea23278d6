"""Route planning for a fuel-limited UAV refueled by a road-bound vehicle.

The pipeline: build_problem runs site selection on an instance, then
solve_heuristic, solve_milp, or solve_oracle produce routes over the same
Problem. verify re-checks any solution independently of its producer.
"""

from fcurp._core import (
    DisconnectedRoad,
    FrontierExhausted,
    GenConfig,
    Instance,
    NetworkKind,
    Point,
    Problem,
    RepairFailure,
    RoadNetwork,
    RouteSolution,
    SiteSet,
    SolveStatus,
    TargetMode,
    TooLarge,
    UncoverableTarget,
    build_problem,
    generate,
    instance_to_json,
    load_instance,
    load_solution,
    parse_instance,
    parse_solution,
    render_instance_svg,
    render_svg,
    road_network,
    save_instance,
    save_solution,
    solution_to_json,
    solve_heuristic,
    solve_milp,
    solve_oracle,
    verify,
)

__all__ = [
    "DisconnectedRoad",
    "FrontierExhausted",
    "GenConfig",
    "Instance",
    "NetworkKind",
    "Point",
    "Problem",
    "RepairFailure",
    "RoadNetwork",
    "RouteSolution",
    "SiteSet",
    "SolveStatus",
    "TargetMode",
    "TooLarge",
    "UncoverableTarget",
    "build_problem",
    "generate",
    "instance_to_json",
    "load_instance",
    "load_solution",
    "parse_instance",
    "parse_solution",
    "render_instance_svg",
    "render_svg",
    "road_network",
    "save_instance",
    "save_solution",
    "solution_to_json",
    "solve_heuristic",
    "solve_milp",
    "solve_oracle",
    "verify",
]
