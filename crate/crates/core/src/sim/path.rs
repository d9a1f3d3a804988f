//! Pure-pursuit path following over one patch or a chain of patches.
//!
//! Waypoints live in the chained frame: patch k's local x runs from the
//! cumulative width of the patches before it. A run produces a [`Trajectory`]
//! of per-step samples plus a summary, and an outcome that distinguishes
//! completion from detachment, corner stalls, and step-cap exhaustion.

use serde::Serialize;

use crate::error::{ensure_positive, ModelError, ModelResult};
use crate::physics::{EnvironmentConstants, RobotSpec, SurfacePatch};
use crate::sim::{
    adhesion_margin, contact_status, step, Command, ContactStatus, CornerOutcome, RobotState,
    SpeedCalibration, SurfaceWorld,
};

/// Pure-pursuit controller parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PursuitParams {
    /// Lookahead distance along the reference path (m).
    pub lookahead: f64,
    /// Commanded course speed (m/s); clamped by the speed model per step.
    pub speed: f64,
    /// Distance to the final waypoint that counts as arrival (m).
    pub goal_tolerance: f64,
}

impl Default for PursuitParams {
    fn default() -> Self {
        Self {
            lookahead: 0.1,
            speed: 0.3,
            goal_tolerance: 0.01,
        }
    }
}

impl PursuitParams {
    pub fn validate(&self) -> ModelResult<()> {
        ensure_positive("lookahead", self.lookahead)?;
        ensure_positive("speed", self.speed)?;
        ensure_positive("goal_tolerance", self.goal_tolerance)
    }
}

/// One recorded simulation step.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TrajectorySample {
    /// Simulation time (s).
    pub time: f64,
    pub state: RobotState,
    pub contact: ContactStatus,
}

/// Aggregates over a whole run.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TrajectorySummary {
    /// Time of the last sample (s).
    pub total_time: f64,
    /// Distance actually traveled (m).
    pub path_length: f64,
    /// Largest perpendicular distance from the reference path (m).
    pub max_cross_track: f64,
    /// Smallest adhesion margin seen along the run.
    pub min_adhesion_margin: f64,
}

/// Recorded samples plus their summary.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Trajectory {
    pub samples: Vec<TrajectorySample>,
    pub summary: TrajectorySummary,
}

/// How a path-following run ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RunOutcome {
    /// Final waypoint reached within the goal tolerance.
    Completed,
    /// Net normal force went non-positive; the run stopped where it detached.
    Detached,
    /// An internal corner demanded more torque than the motors provide.
    Stalled { joint: usize },
    /// Step cap exhausted before reaching the goal.
    Incomplete,
}

impl RunOutcome {
    pub fn is_complete(self) -> bool {
        matches!(self, RunOutcome::Completed)
    }

    pub fn name(self) -> &'static str {
        match self {
            RunOutcome::Completed => "completed",
            RunOutcome::Detached => "detached",
            RunOutcome::Stalled { .. } => "stalled",
            RunOutcome::Incomplete => "incomplete",
        }
    }
}

/// A finished (possibly partial) run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PathRun {
    pub trajectory: Trajectory,
    pub outcome: RunOutcome,
}

/// Reference polyline with cumulative arc lengths, in the chained frame.
struct ReferencePath {
    points: Vec<(f64, f64)>,
    cumulative: Vec<f64>,
}

/// Segments ahead of the progress hint considered when re-projecting.
const PROJECTION_WINDOW: usize = 4;

impl ReferencePath {
    fn new(waypoints: &[(f64, f64)]) -> ModelResult<Self> {
        let mut points: Vec<(f64, f64)> = Vec::with_capacity(waypoints.len());
        for &(x, y) in waypoints {
            if !(x.is_finite() && y.is_finite()) {
                return Err(ModelError::NotFinite {
                    name: "waypoint coordinate",
                    value: if x.is_finite() { y } else { x },
                });
            }
            match points.last() {
                Some(&(px, py)) if (x - px).hypot(y - py) < 1e-12 => {}
                _ => points.push((x, y)),
            }
        }
        if points.len() < 2 {
            return Err(ModelError::TooFewWaypoints { got: points.len() });
        }
        let mut cumulative = Vec::with_capacity(points.len());
        cumulative.push(0.0);
        for pair in points.windows(2) {
            let (x0, y0) = pair[0];
            let (x1, y1) = pair[1];
            let prev = *cumulative.last().expect("cumulative starts non-empty");
            cumulative.push(prev + (x1 - x0).hypot(y1 - y0));
        }
        Ok(Self { points, cumulative })
    }

    fn total_length(&self) -> f64 {
        *self.cumulative.last().expect("cumulative is non-empty")
    }

    fn end(&self) -> (f64, f64) {
        *self.points.last().expect("points is non-empty")
    }

    /// Project `pos` onto the segments in a forward window starting at
    /// `hint`; returns (segment, arc length, distance). Monotone in the
    /// hint, so tracking never jumps backwards across path self-crossings.
    fn project(&self, pos: (f64, f64), hint: usize) -> (usize, f64, f64) {
        let last_segment = self.points.len() - 2;
        let start = hint.min(last_segment);
        let stop = (start + PROJECTION_WINDOW).min(last_segment);
        let mut best = (start, 0.0, f64::INFINITY);
        for seg in start..=stop {
            let (ax, ay) = self.points[seg];
            let (bx, by) = self.points[seg + 1];
            let (dx, dy) = (bx - ax, by - ay);
            let len_sq = dx * dx + dy * dy;
            let t = (((pos.0 - ax) * dx + (pos.1 - ay) * dy) / len_sq).clamp(0.0, 1.0);
            let (px, py) = (ax + t * dx, ay + t * dy);
            let dist = (pos.0 - px).hypot(pos.1 - py);
            if dist < best.2 {
                let arc = self.cumulative[seg] + t * len_sq.sqrt();
                best = (seg, arc, dist);
            }
        }
        best
    }

    /// Point at the given arc length, clamped to the path ends.
    fn point_at_arc(&self, arc: f64) -> (f64, f64) {
        if arc <= 0.0 {
            return self.points[0];
        }
        if arc >= self.total_length() {
            return self.end();
        }
        let seg = match self
            .cumulative
            .binary_search_by(|probe| probe.partial_cmp(&arc).expect("arc lengths are finite"))
        {
            Ok(exact) => exact.min(self.points.len() - 2),
            Err(insertion) => insertion - 1,
        };
        let span = self.cumulative[seg + 1] - self.cumulative[seg];
        let t = (arc - self.cumulative[seg]) / span;
        let (ax, ay) = self.points[seg];
        let (bx, by) = self.points[seg + 1];
        (ax + t * (bx - ax), ay + t * (by - ay))
    }
}

/// State at the first waypoint, heading toward the second.
pub fn start_state_for(waypoints: &[(f64, f64)]) -> ModelResult<RobotState> {
    let path = ReferencePath::new(waypoints)?;
    let (x0, y0) = path.points[0];
    let (x1, y1) = path.points[1];
    let mut state = RobotState::at_origin();
    state.x = x0;
    state.y = y0;
    state.heading = (y1 - y0).atan2(x1 - x0);
    Ok(state)
}

/// Axis-aligned square course with four 90° turns, returning to the start.
pub fn square_course(side: f64) -> Vec<(f64, f64)> {
    vec![
        (0.0, 0.0),
        (side, 0.0),
        (side, side),
        (0.0, side),
        (0.0, 0.0),
    ]
}

/// S-shaped course spanning `length` along x: two opposing half-circles.
pub fn s_curve_course(length: f64) -> Vec<(f64, f64)> {
    const ARC_POINTS: usize = 40;
    let radius = length / 4.0;
    let mut points = Vec::with_capacity(2 * ARC_POINTS + 1);
    for i in 0..=ARC_POINTS {
        let t = std::f64::consts::PI * (1.0 - i as f64 / ARC_POINTS as f64);
        points.push((radius + radius * t.cos(), radius * t.sin()));
    }
    for i in 1..=ARC_POINTS {
        let t = std::f64::consts::PI * (1.0 + i as f64 / ARC_POINTS as f64);
        points.push((3.0 * radius + radius * t.cos(), radius * t.sin()));
    }
    points
}

/// Follow `waypoints` across a chained-patch world with pure pursuit.
///
/// The start state's position is interpreted in its patch's local frame.
/// Corner joints are taken when the robot crosses the departing patch's far
/// edge between steps. The run records every step and never discards the
/// partial trajectory on failure.
#[allow(clippy::too_many_arguments)]
pub fn follow_path_world(
    robot: &RobotSpec,
    start: RobotState,
    waypoints: &[(f64, f64)],
    params: PursuitParams,
    dt: f64,
    world: &SurfaceWorld,
    cal: SpeedCalibration,
    env: EnvironmentConstants,
) -> ModelResult<PathRun> {
    params.validate()?;
    ensure_positive("dt", dt)?;
    start.validate()?;
    robot.validate()?;
    cal.validate()?;
    let path = ReferencePath::new(waypoints)?;

    // Cumulative x-offset of each patch in the chained frame.
    let mut offsets = Vec::with_capacity(world.patch_count());
    let mut acc = 0.0;
    for index in 0..world.patch_count() {
        offsets.push(acc);
        let width = world.extent(index)?.width;
        if width.is_finite() {
            acc += width;
        }
    }
    if start.surface_id >= world.patch_count() {
        return Err(ModelError::UnknownPatch {
            index: start.surface_id,
            count: world.patch_count(),
        });
    }

    let step_cap = ((20.0 * path.total_length() / (params.speed * dt)).ceil() as u64).max(10_000);

    let mut state = start;
    let mut time = 0.0;
    let mut samples = Vec::new();
    let mut hint = 0usize;
    let mut traveled = 0.0;
    let mut max_cross_track: f64 = 0.0;
    let mut min_margin = f64::INFINITY;

    let global =
        |state: &RobotState, offsets: &[f64]| (offsets[state.surface_id] + state.x, state.y);

    let mut record = |state: &RobotState,
                      time: f64,
                      contact: ContactStatus,
                      cross: f64,
                      samples: &mut Vec<TrajectorySample>|
     -> ModelResult<()> {
        max_cross_track = max_cross_track.max(cross);
        let patch = world.patch(state.surface_id)?;
        let margin = adhesion_margin(robot, state, patch, env)?;
        min_margin = min_margin.min(margin);
        samples.push(TrajectorySample {
            time,
            state: *state,
            contact,
        });
        Ok(())
    };

    let pos = global(&state, &offsets);
    let (seg, _, cross) = path.project(pos, hint);
    hint = seg;
    let surface = world.patch(state.surface_id)?;
    let contact = contact_status(robot, &state, surface, env);
    record(&state, time, contact, cross, &mut samples)?;
    if contact == ContactStatus::PullOff {
        return Ok(finish(samples, traveled, max_cross_track, min_margin, RunOutcome::Detached));
    }

    let mut outcome = RunOutcome::Incomplete;
    for _ in 0..step_cap {
        let pos = global(&state, &offsets);
        let (seg, progress, _) = path.project(pos, hint);
        hint = seg;

        // Arrival needs both proximity to the final waypoint and arc-length
        // progress, so courses that close on their start do not finish at
        // the first step.
        let goal = path.end();
        if progress + params.goal_tolerance >= path.total_length()
            && (pos.0 - goal.0).hypot(pos.1 - goal.1) <= params.goal_tolerance
        {
            outcome = RunOutcome::Completed;
            break;
        }
        let (tx, ty) = path.point_at_arc(progress + params.lookahead);
        let alpha = wrap_angle((ty - pos.1).atan2(tx - pos.0) - state.heading);
        let angular = 2.0 * params.speed * alpha.sin() / params.lookahead;
        let cmd = Command {
            linear: params.speed,
            angular,
        };

        let surface = world.patch(state.surface_id)?;
        let next = match step(robot, &state, cmd, dt, surface, cal, env) {
            Ok(next) => next,
            Err(ModelError::Detached { .. }) => {
                time += dt;
                record(&state, time, ContactStatus::PullOff, 0.0, &mut samples)?;
                outcome = RunOutcome::Detached;
                break;
            }
            Err(other) => return Err(other),
        };
        time += dt;

        let mut landed = next;
        let fold = world.extent(landed.surface_id)?.width;
        if landed.x > fold {
            if let Some((joint_index, _)) = world.joint_from(landed.surface_id) {
                match world.traverse_corner(robot, &landed, joint_index, env)? {
                    CornerOutcome::Success(remapped) => landed = remapped,
                    CornerOutcome::Stall { .. } => {
                        let surface = world.patch(landed.surface_id)?;
                        let contact = contact_status(robot, &landed, surface, env);
                        let lpos = global(&landed, &offsets);
                        let (_, _, cross) = path.project(lpos, hint);
                        traveled += (lpos.0 - pos.0).hypot(lpos.1 - pos.1);
                        record(&landed, time, contact, cross, &mut samples)?;
                        outcome = RunOutcome::Stalled { joint: joint_index };
                        break;
                    }
                }
            }
        }

        let lpos = global(&landed, &offsets);
        let (seg, _, cross) = path.project(lpos, hint);
        hint = seg;
        traveled += (lpos.0 - pos.0).hypot(lpos.1 - pos.1);
        let surface = world.patch(landed.surface_id)?;
        let contact = contact_status(robot, &landed, surface, env);
        record(&landed, time, contact, cross, &mut samples)?;
        state = landed;
    }

    Ok(finish(samples, traveled, max_cross_track, min_margin, outcome))
}

/// Follow `waypoints` on a single uniform patch.
#[allow(clippy::too_many_arguments)]
pub fn follow_path(
    robot: &RobotSpec,
    start: RobotState,
    waypoints: &[(f64, f64)],
    params: PursuitParams,
    dt: f64,
    surface: SurfacePatch,
    cal: SpeedCalibration,
    env: EnvironmentConstants,
) -> ModelResult<PathRun> {
    let world = SurfaceWorld::single(surface);
    let mut start = start;
    start.surface_id = 0;
    follow_path_world(robot, start, waypoints, params, dt, &world, cal, env)
}

fn finish(
    samples: Vec<TrajectorySample>,
    path_length: f64,
    max_cross_track: f64,
    min_margin: f64,
    outcome: RunOutcome,
) -> PathRun {
    let total_time = samples.last().map(|s| s.time).unwrap_or(0.0);
    PathRun {
        trajectory: Trajectory {
            samples,
            summary: TrajectorySummary {
                total_time,
                path_length,
                max_cross_track,
                min_adhesion_margin: min_margin,
            },
        },
        outcome,
    }
}

fn wrap_angle(angle: f64) -> f64 {
    let mut wrapped = angle % std::f64::consts::TAU;
    if wrapped >= std::f64::consts::PI {
        wrapped -= std::f64::consts::TAU;
    } else if wrapped < -std::f64::consts::PI {
        wrapped += std::f64::consts::TAU;
    }
    wrapped
}
