#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "vton/image.hpp"
#include "vton/rng.hpp"

namespace vton {

// ---------------------------------------------------------------------------
// domain types
// ---------------------------------------------------------------------------

enum class Joint {
    head,
    neck,
    l_shoulder,
    r_shoulder,
    l_elbow,
    r_elbow,
    l_wrist,
    r_wrist,
    l_hip,
    r_hip,
    l_knee,
    r_knee,
    l_ankle,
    r_ankle,
};
constexpr int kJointCount = 14;

struct Vec2 {
    float x = 0, y = 0;
};

struct Skeleton {
    std::array<Vec2, kJointCount> joints{};

    Vec2& operator[](Joint j) { return joints[static_cast<size_t>(j)]; }
    const Vec2& operator[](Joint j) const { return joints[static_cast<size_t>(j)]; }
};

const std::array<const char*, kJointCount>& joint_names();
// Fixed limb connectivity, 13 bones.
const std::vector<std::pair<Joint, Joint>>& bone_topology();
void validate_skeleton(const Skeleton& s, int width, int height);

struct PersonSpec {
    Rgb skin_tone;                   // components in [0,1]
    float body_scale = 1.0f;         // [0.7, 1.3]
    float torso_width_factor = 1.0f; // [0.7, 1.4]
    // per-limb length scalars
    float upper_arm = 1.0f, forearm = 1.0f, thigh = 1.0f, shin = 1.0f;
};
void validate_person_spec(const PersonSpec& p);

enum class GarmentCategory { upper, lower, dress };
enum class GarmentPattern { solid, stripes, dots, logo };
enum class GarmentLength { short_cut, long_cut };

std::string to_string(GarmentCategory c);
std::string to_string(GarmentPattern p);
std::string to_string(GarmentLength l);
GarmentCategory garment_category_from_string(const std::string& s);
GarmentPattern garment_pattern_from_string(const std::string& s);
GarmentLength garment_length_from_string(const std::string& s);

struct GarmentSpec {
    GarmentCategory category = GarmentCategory::upper;
    Rgb base_color;
    GarmentPattern pattern = GarmentPattern::solid;
    Rgb pattern_color;
    GarmentLength length = GarmentLength::short_cut;  // sleeve or leg length
    int pattern_seed = 0;
};
// pattern_color must sit at channel distance >= 0.2 from base_color so
// fidelity metrics stay discriminative.
void validate_garment_spec(const GarmentSpec& g);

// Output of one figure render; masks are mutually disjoint by construction
// (painter's algorithm, last label wins).
struct FigureRender {
    Image image;
    Mask silhouette;  // union of every figure pixel
    Mask face;
    Mask hand;
    Mask garment;
};

struct SampleRecord {
    int index = 0;
    uint64_t seed = 0;
    std::string pair_type = "tryon";
    PersonSpec person;
    GarmentSpec worn_garment;    // worn in person_image
    GarmentSpec target_garment;  // shown in catalog_image and target_image
    Skeleton skeleton;
    Rgb background;
    std::vector<int> prompt_tokens;  // describe target_garment

    Image person_image;
    Image catalog_image;
    Image target_image;
    // target-side masks
    Mask silhouette_mask, face_mask, hand_mask, garment_mask;
};

// ---------------------------------------------------------------------------
// prompt vocabulary (fixed, closed)
// ---------------------------------------------------------------------------

const std::vector<std::string>& prompt_vocab();
int prompt_token(const std::string& word);
std::vector<int> garment_prompt_tokens(const GarmentSpec& g);
std::vector<int> prompt_tokens_from_words(const std::string& space_separated);

// ---------------------------------------------------------------------------
// generators
// ---------------------------------------------------------------------------

PersonSpec random_person_spec(Rng& rng);
GarmentSpec random_garment_spec(Rng& rng, GarmentCategory category);
Skeleton random_skeleton(const PersonSpec& spec, int width, int height, Rng& rng);
Rgb random_background(Rng& rng, const std::vector<Rgb>& avoid);

FigureRender generate_person(const PersonSpec& spec, const Skeleton& skeleton,
                             const GarmentSpec& garment, int width, int height, uint64_t seed);
Image generate_catalog(const GarmentSpec& garment, int width, int height, uint64_t seed);
Image render_pose_map(const Skeleton& skeleton, int width, int height);

struct DegradeConfig {
    int blur_width = 3;        // odd box kernel width
    int resample_factor = 2;   // down-up resampling factor
    float noise_sigma = 0.05f; // additive Gaussian, pixel units
};
Image degrade(const Image& img, const DegradeConfig& cfg, uint64_t seed);

// ---------------------------------------------------------------------------
// dataset on disk
// ---------------------------------------------------------------------------

struct DatasetConfig {
    int width = 64;
    int height = 96;
    double upper_prob = 0.4;
    double lower_prob = 0.3;
    double dress_prob = 0.3;
    int downsample_factor = 4;  // image sizes must be divisible by this
};

struct RecordPaths {
    std::string person, catalog, target;
    std::string silhouette, face, hand, garment;
};

struct RecordMeta {
    int index = 0;
    uint64_t seed = 0;
    std::string pair_type = "tryon";
    RecordPaths paths;
    PersonSpec person;
    GarmentSpec worn_garment, target_garment;
    Skeleton skeleton;
    Rgb background;
    std::vector<int> prompt_tokens;
};

struct DatasetManifest {
    std::string root_dir;
    DatasetConfig config;
    std::vector<RecordMeta> records;

    size_t size() const { return records.size(); }
};

// Sample i is a pure function of (root_seed, i); generation order is free.
SampleRecord build_sample(const DatasetConfig& cfg, uint64_t root_seed, int index);
DatasetManifest build_dataset(const DatasetConfig& cfg, uint64_t root_seed, int n,
                              const std::string& out_dir);
DatasetManifest load_dataset(const std::string& dir);
SampleRecord load_record(const DatasetManifest& manifest, size_t i);

DatasetManifest build_refiner_pairs(const DatasetManifest& source, const DegradeConfig& cfg,
                                    uint64_t seed, const std::string& out_dir);

}  // namespace vton
