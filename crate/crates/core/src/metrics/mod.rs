//! Evaluation metrics: scene- and object-level Chamfer distance and F-Score,
//! bounding-box IoU, and voxel volume IoU, with exhaustive oracles for the
//! accelerated paths.

mod chamfer;
mod kdtree;
mod voxel;

pub use chamfer::{chamfer, chamfer_brute_force, fscore, fscore_brute_force};
pub use kdtree::{brute_force_nearest_sq, dist_sq, KdTree};
pub use voxel::{volume_iou, MIN_VOXEL_RESOLUTION};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::{aabb_iou_3d, apply_pose, Pose};
use crate::layout::SceneSample;
use crate::real::Real;

#[derive(Debug, Clone, Error)]
pub enum MetricsError {
    #[error("predicted object count {predicted} does not match ground truth {ground_truth}")]
    ObjectCountMismatch {
        predicted: usize,
        ground_truth: usize,
    },
    #[error(transparent)]
    Geometry(#[from] crate::geometry::GeometryError),
}

#[derive(Debug, Clone, PartialEq)]
pub struct MetricsConfig<T: Real> {
    /// F-Score distance threshold in normalized scene units.
    pub fscore_tau: T,
    /// Volume-IoU voxel grid resolution; 0 disables the (costly) metric.
    pub voxel_resolution: usize,
}

impl<T: Real> Default for MetricsConfig<T> {
    fn default() -> Self {
        Self {
            fscore_tau: T::of(0.1),
            voxel_resolution: 64,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ObjectMetrics<T: Real> {
    pub cd: Option<T>,
    pub fscore: Option<T>,
    pub iou_b: T,
    pub volume_iou: Option<T>,
}

/// Per-scene evaluation summary. `None` marks undefined metrics (empty
/// clouds or degenerate volumes), which are skipped by the means.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricsReport<T: Real> {
    pub cd_s: Option<T>,
    pub fscore_s: Option<T>,
    pub cd_o: Option<T>,
    pub fscore_o: Option<T>,
    pub iou_b: T,
    pub volume_iou: Option<T>,
    pub per_object: Vec<ObjectMetrics<T>>,
    pub fscore_tau: T,
    pub voxel_resolution: usize,
    pub box_convention: &'static str,
}

/// Serializable mirror of [`MetricsReport`] (f64, averaged or per scene).
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct MetricsRecord {
    pub cd_s: Option<f64>,
    pub fscore_s: Option<f64>,
    pub cd_o: Option<f64>,
    pub fscore_o: Option<f64>,
    pub iou_b: f64,
    pub volume_iou: Option<f64>,
    pub fscore_tau: f64,
    pub voxel_resolution: usize,
    pub box_convention: String,
    pub scene_count: usize,
}

impl<T: Real> MetricsReport<T> {
    pub fn to_record(&self) -> MetricsRecord {
        MetricsRecord {
            cd_s: self.cd_s.map(Real::as_f64),
            fscore_s: self.fscore_s.map(Real::as_f64),
            cd_o: self.cd_o.map(Real::as_f64),
            fscore_o: self.fscore_o.map(Real::as_f64),
            iou_b: self.iou_b.as_f64(),
            volume_iou: self.volume_iou.map(Real::as_f64),
            fscore_tau: self.fscore_tau.as_f64(),
            voxel_resolution: self.voxel_resolution,
            box_convention: self.box_convention.to_string(),
            scene_count: 1,
        }
    }
}

/// Mean of per-scene records, skipping undefined entries per field.
pub fn mean_records(records: &[MetricsRecord]) -> Option<MetricsRecord> {
    let first = records.first()?;
    let mean_opt = |get: &dyn Fn(&MetricsRecord) -> Option<f64>| {
        let vals: Vec<f64> = records.iter().filter_map(get).collect();
        if vals.is_empty() {
            None
        } else {
            Some(vals.iter().sum::<f64>() / vals.len() as f64)
        }
    };
    Some(MetricsRecord {
        cd_s: mean_opt(&|r| r.cd_s),
        fscore_s: mean_opt(&|r| r.fscore_s),
        cd_o: mean_opt(&|r| r.cd_o),
        fscore_o: mean_opt(&|r| r.fscore_o),
        iou_b: records.iter().map(|r| r.iou_b).sum::<f64>() / records.len() as f64,
        volume_iou: mean_opt(&|r| r.volume_iou),
        fscore_tau: first.fscore_tau,
        voxel_resolution: first.voxel_resolution,
        box_convention: first.box_convention.clone(),
        scene_count: records.iter().map(|r| r.scene_count).sum(),
    })
}

/// Evaluates predicted poses against a ground-truth scene. Object
/// correspondence is by index. All comparisons happen in the ground-truth
/// scene's normalized frame; bounding boxes are axis-aligned in that frame.
pub fn evaluate_scene<T: Real>(
    gt: &SceneSample<T>,
    predicted_poses: &[Pose<T>],
    cfg: &MetricsConfig<T>,
) -> Result<MetricsReport<T>, MetricsError> {
    let n = gt.object_count();
    if predicted_poses.len() != n {
        return Err(MetricsError::ObjectCountMismatch {
            predicted: predicted_poses.len(),
            ground_truth: n,
        });
    }

    let norm = &gt.normalization;
    let mut per_object = Vec::with_capacity(n);
    let mut scene_pred = Vec::new();
    let mut scene_gt = Vec::new();

    for (obj, pred_pose) in gt.objects.iter().zip(predicted_poses) {
        let pred_n = norm.normalize_pose(pred_pose);
        let gt_n = norm.normalize_pose(&obj.pose);
        let pred_cloud = apply_pose(&pred_n, &obj.canonical);
        let gt_cloud = apply_pose(&gt_n, &obj.canonical);

        let cd = chamfer(pred_cloud.points(), gt_cloud.points());
        let fs = fscore(pred_cloud.points(), gt_cloud.points(), cfg.fscore_tau);
        let iou_b = aabb_iou_3d(&pred_cloud.aabb(), &gt_cloud.aabb()).value;
        let vol = if cfg.voxel_resolution >= MIN_VOXEL_RESOLUTION {
            volume_iou(
                pred_cloud.points(),
                gt_cloud.points(),
                cfg.voxel_resolution,
            )
        } else {
            None
        };
        per_object.push(ObjectMetrics {
            cd,
            fscore: fs,
            iou_b,
            volume_iou: vol,
        });
        scene_pred.extend_from_slice(pred_cloud.points());
        scene_gt.extend_from_slice(gt_cloud.points());
    }

    let cd_s = chamfer(&scene_pred, &scene_gt);
    let fscore_s = fscore(&scene_pred, &scene_gt, cfg.fscore_tau);
    let mean_opt = |vals: &mut dyn Iterator<Item = Option<T>>| {
        let defined: Vec<T> = vals.flatten().collect();
        if defined.is_empty() {
            None
        } else {
            Some(
                defined.iter().copied().fold(T::zero(), |a, b| a + b)
                    / T::from_usize_(defined.len()),
            )
        }
    };
    let cd_o = mean_opt(&mut per_object.iter().map(|o| o.cd));
    let fscore_o = mean_opt(&mut per_object.iter().map(|o| o.fscore));
    let volume = mean_opt(&mut per_object.iter().map(|o| o.volume_iou));
    let iou_b = per_object
        .iter()
        .map(|o| o.iou_b)
        .fold(T::zero(), |a, b| a + b)
        / T::from_usize_(n);

    Ok(MetricsReport {
        cd_s,
        fscore_s,
        cd_o,
        fscore_o,
        iou_b,
        volume_iou: volume,
        per_object,
        fscore_tau: cfg.fscore_tau,
        voxel_resolution: cfg.voxel_resolution,
        box_convention: "axis-aligned",
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::layout::{generate_scene, CameraConfig, DatasetConfig};
    use nalgebra::Vector3;

    fn sample_scene() -> SceneSample<f64> {
        let cfg = DatasetConfig {
            scenes: 1,
            points_per_object: 512,
            camera: CameraConfig {
                resolution: 96,
                ..CameraConfig::default()
            },
            ..DatasetConfig::default()
        };
        generate_scene(&cfg, 11, 0).unwrap()
    }

    #[test]
    fn perfect_prediction_scores_perfectly() {
        let scene = sample_scene();
        let report = evaluate_scene(
            &scene,
            &scene.gt_poses(),
            &MetricsConfig {
                voxel_resolution: 32,
                ..MetricsConfig::default()
            },
        )
        .unwrap();
        assert_eq!(report.cd_s, Some(0.0));
        assert_eq!(report.fscore_s, Some(1.0));
        assert_eq!(report.iou_b, 1.0);
        assert_eq!(report.volume_iou, Some(1.0));
    }

    #[test]
    fn far_translated_object_contributes_zero_box_iou() {
        let scene = sample_scene();
        let mut poses = scene.gt_poses();
        poses[0].translation += Vector3::new(100.0, 0.0, 0.0);
        let report = evaluate_scene(
            &scene,
            &poses,
            &MetricsConfig {
                voxel_resolution: 0,
                ..MetricsConfig::default()
            },
        )
        .unwrap();
        assert_eq!(report.per_object[0].iou_b, 0.0);
        assert!(report.iou_b < 1.0);
    }

    #[test]
    fn count_mismatch_is_an_error() {
        let scene = sample_scene();
        let err = evaluate_scene(&scene, &[], &MetricsConfig::default());
        assert!(matches!(err, Err(MetricsError::ObjectCountMismatch { .. })));
    }

    #[test]
    fn reports_are_deterministic() {
        let scene = sample_scene();
        let poses = scene.gt_poses();
        let cfg = MetricsConfig {
            voxel_resolution: 16,
            ..MetricsConfig::default()
        };
        let a = evaluate_scene(&scene, &poses, &cfg).unwrap();
        let b = evaluate_scene(&scene, &poses, &cfg).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn record_means_skip_undefined() {
        let a = MetricsRecord {
            cd_s: Some(1.0),
            fscore_s: None,
            cd_o: Some(2.0),
            fscore_o: Some(0.5),
            iou_b: 0.4,
            volume_iou: None,
            fscore_tau: 0.1,
            voxel_resolution: 64,
            box_convention: "axis-aligned".into(),
            scene_count: 1,
        };
        let mut b = a.clone();
        b.cd_s = Some(3.0);
        b.fscore_s = Some(1.0);
        b.iou_b = 0.6;
        let mean = mean_records(&[a, b]).unwrap();
        assert_eq!(mean.cd_s, Some(2.0));
        assert_eq!(mean.fscore_s, Some(1.0));
        assert!((mean.iou_b - 0.5).abs() < 1e-12);
        assert_eq!(mean.scene_count, 2);
    }
}
