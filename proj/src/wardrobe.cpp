#include "vton/wardrobe.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>

#include "vton/png_io.hpp"
#include <json.hpp>

namespace fs = std::filesystem;
using nlohmann::json;

namespace vton {

// ---------------------------------------------------------------------------
// skeleton
// ---------------------------------------------------------------------------

const std::array<const char*, kJointCount>& joint_names() {
    static const std::array<const char*, kJointCount> names = {
        "head",    "neck",    "l_shoulder", "r_shoulder", "l_elbow", "r_elbow", "l_wrist",
        "r_wrist", "l_hip",   "r_hip",      "l_knee",     "r_knee",  "l_ankle", "r_ankle"};
    return names;
}

const std::vector<std::pair<Joint, Joint>>& bone_topology() {
    static const std::vector<std::pair<Joint, Joint>> bones = {
        {Joint::head, Joint::neck},
        {Joint::neck, Joint::l_shoulder},
        {Joint::neck, Joint::r_shoulder},
        {Joint::l_shoulder, Joint::l_elbow},
        {Joint::l_elbow, Joint::l_wrist},
        {Joint::r_shoulder, Joint::r_elbow},
        {Joint::r_elbow, Joint::r_wrist},
        {Joint::neck, Joint::l_hip},
        {Joint::neck, Joint::r_hip},
        {Joint::l_hip, Joint::l_knee},
        {Joint::l_knee, Joint::l_ankle},
        {Joint::r_hip, Joint::r_knee},
        {Joint::r_knee, Joint::r_ankle},
    };
    return bones;
}

void validate_skeleton(const Skeleton& s, int width, int height) {
    for (int i = 0; i < kJointCount; i++) {
        const Vec2& p = s.joints[i];
        if (!(p.x >= 0 && p.x < width && p.y >= 0 && p.y < height))
            throw std::runtime_error(std::string("invalid-skeleton: joint ") + joint_names()[i] +
                                     " outside image bounds");
    }
}

void validate_person_spec(const PersonSpec& p) {
    auto in01 = [](float v) { return v >= 0.f && v <= 1.f; };
    check_config(in01(p.skin_tone.r) && in01(p.skin_tone.g) && in01(p.skin_tone.b),
                 "person spec: skin tone out of [0,1]");
    check_config(p.body_scale >= 0.7f && p.body_scale <= 1.3f,
                 "person spec: body_scale out of [0.7, 1.3]");
    check_config(p.torso_width_factor >= 0.7f && p.torso_width_factor <= 1.4f,
                 "person spec: torso_width_factor out of [0.7, 1.4]");
    for (float v : {p.upper_arm, p.forearm, p.thigh, p.shin})
        check_config(v >= 0.7f && v <= 1.3f, "person spec: limb length out of [0.7, 1.3]");
}

// ---------------------------------------------------------------------------
// garment enums + validation
// ---------------------------------------------------------------------------

std::string to_string(GarmentCategory c) {
    switch (c) {
        case GarmentCategory::upper: return "upper";
        case GarmentCategory::lower: return "lower";
        default: return "dress";
    }
}
std::string to_string(GarmentPattern p) {
    switch (p) {
        case GarmentPattern::solid: return "solid";
        case GarmentPattern::stripes: return "stripes";
        case GarmentPattern::dots: return "dots";
        default: return "logo";
    }
}
std::string to_string(GarmentLength l) {
    return l == GarmentLength::short_cut ? "short" : "long";
}

GarmentCategory garment_category_from_string(const std::string& s) {
    if (s == "upper") return GarmentCategory::upper;
    if (s == "lower") return GarmentCategory::lower;
    if (s == "dress") return GarmentCategory::dress;
    throw ConfigError("unknown garment category: " + s);
}
GarmentPattern garment_pattern_from_string(const std::string& s) {
    if (s == "solid") return GarmentPattern::solid;
    if (s == "stripes") return GarmentPattern::stripes;
    if (s == "dots") return GarmentPattern::dots;
    if (s == "logo") return GarmentPattern::logo;
    throw ConfigError("unknown garment pattern: " + s);
}
GarmentLength garment_length_from_string(const std::string& s) {
    if (s == "short") return GarmentLength::short_cut;
    if (s == "long") return GarmentLength::long_cut;
    throw ConfigError("unknown garment length: " + s);
}

void validate_garment_spec(const GarmentSpec& g) {
    auto in01 = [](float v) { return v >= 0.f && v <= 1.f; };
    check_config(in01(g.base_color.r) && in01(g.base_color.g) && in01(g.base_color.b) &&
                     in01(g.pattern_color.r) && in01(g.pattern_color.g) && in01(g.pattern_color.b),
                 "garment spec: color out of [0,1]");
    check_config(color_dist(g.base_color, g.pattern_color) >= 0.2f,
                 "garment spec: pattern_color too close to base_color (need >= 0.2)");
}

// ---------------------------------------------------------------------------
// prompt vocabulary
// ---------------------------------------------------------------------------

namespace {
const std::vector<std::pair<std::string, Rgb>>& color_names() {
    static const std::vector<std::pair<std::string, Rgb>> table = {
        {"black", {0.05f, 0.05f, 0.05f}}, {"white", {0.95f, 0.95f, 0.95f}},
        {"gray", {0.5f, 0.5f, 0.5f}},     {"red", {0.85f, 0.12f, 0.12f}},
        {"green", {0.12f, 0.7f, 0.18f}},  {"blue", {0.15f, 0.25f, 0.85f}},
        {"yellow", {0.92f, 0.88f, 0.12f}},{"cyan", {0.12f, 0.82f, 0.82f}},
        {"magenta", {0.85f, 0.12f, 0.8f}},{"orange", {0.92f, 0.55f, 0.1f}},
        {"purple", {0.5f, 0.15f, 0.7f}},  {"pink", {0.95f, 0.6f, 0.7f}},
        {"brown", {0.55f, 0.35f, 0.15f}}, {"teal", {0.1f, 0.5f, 0.5f}},
        {"navy", {0.1f, 0.1f, 0.4f}},     {"olive", {0.5f, 0.5f, 0.12f}},
    };
    return table;
}

std::string nearest_color_name(const Rgb& c) {
    double best = 1e9;
    std::string name;
    for (const auto& [n, ref] : color_names()) {
        double d = (c.r - ref.r) * (c.r - ref.r) + (c.g - ref.g) * (c.g - ref.g) +
                   (c.b - ref.b) * (c.b - ref.b);
        if (d < best) {
            best = d;
            name = n;
        }
    }
    return name;
}
}  // namespace

const std::vector<std::string>& prompt_vocab() {
    static const std::vector<std::string> vocab = [] {
        std::vector<std::string> v = {"upper",  "lower", "dress",  "short", "long",
                                      "solid",  "stripes", "dots", "logo"};
        for (const auto& [name, rgb] : color_names()) v.push_back(name);
        return v;
    }();
    return vocab;
}

int prompt_token(const std::string& word) {
    const auto& v = prompt_vocab();
    for (size_t i = 0; i < v.size(); i++)
        if (v[i] == word) return static_cast<int>(i);
    throw ConfigError("word not in prompt vocabulary: " + word);
}

std::vector<int> garment_prompt_tokens(const GarmentSpec& g) {
    return {prompt_token(to_string(g.category)), prompt_token(to_string(g.length)),
            prompt_token(to_string(g.pattern)), prompt_token(nearest_color_name(g.base_color)),
            prompt_token(nearest_color_name(g.pattern_color))};
}

std::vector<int> prompt_tokens_from_words(const std::string& space_separated) {
    std::vector<int> out;
    std::string word;
    std::istringstream is(space_separated);
    while (is >> word) out.push_back(prompt_token(word));
    return out;
}

// ---------------------------------------------------------------------------
// random specs
// ---------------------------------------------------------------------------

PersonSpec random_person_spec(Rng& rng) {
    PersonSpec p;
    float r = static_cast<float>(rng.uniform(0.55, 0.95));
    p.skin_tone = {r, r * static_cast<float>(rng.uniform(0.72, 0.86)), 0.f};
    p.skin_tone.b = p.skin_tone.g * static_cast<float>(rng.uniform(0.6, 0.85));
    p.body_scale = static_cast<float>(rng.uniform(0.85, 1.15));
    p.torso_width_factor = static_cast<float>(rng.uniform(0.8, 1.3));
    p.upper_arm = static_cast<float>(rng.uniform(0.9, 1.1));
    p.forearm = static_cast<float>(rng.uniform(0.9, 1.1));
    p.thigh = static_cast<float>(rng.uniform(0.9, 1.1));
    p.shin = static_cast<float>(rng.uniform(0.9, 1.1));
    return p;
}

namespace {
// Garment colors keep at least one strong channel so figures stay separable
// from the dark muted backgrounds by a fixed color-distance threshold.
Rgb random_garment_color(Rng& rng) {
    Rgb c{static_cast<float>(rng.uniform(0.05, 0.95)), static_cast<float>(rng.uniform(0.05, 0.95)),
          static_cast<float>(rng.uniform(0.05, 0.95))};
    float mx = std::max({c.r, c.g, c.b});
    if (mx < 0.45f) {
        float boost = static_cast<float>(rng.uniform(0.45, 0.95));
        if (c.r >= c.g && c.r >= c.b)
            c.r = boost;
        else if (c.g >= c.b)
            c.g = boost;
        else
            c.b = boost;
    }
    return c;
}
}  // namespace

GarmentSpec random_garment_spec(Rng& rng, GarmentCategory category) {
    GarmentSpec g;
    g.category = category;
    g.base_color = random_garment_color(rng);
    g.pattern = static_cast<GarmentPattern>(rng.below(4));
    for (int tries = 0; tries < 64; tries++) {
        g.pattern_color = random_garment_color(rng);
        if (color_dist(g.base_color, g.pattern_color) >= 0.2f) break;
    }
    if (color_dist(g.base_color, g.pattern_color) < 0.2f) {
        // deterministic fallback: flip the dominant channel
        g.pattern_color = g.base_color;
        float& ch = g.pattern_color.r >= g.pattern_color.g && g.pattern_color.r >= g.pattern_color.b
                        ? g.pattern_color.r
                        : (g.pattern_color.g >= g.pattern_color.b ? g.pattern_color.g
                                                                  : g.pattern_color.b);
        ch = ch > 0.5f ? ch - 0.3f : ch + 0.3f;
    }
    g.length = rng.bernoulli(0.5) ? GarmentLength::short_cut : GarmentLength::long_cut;
    g.pattern_seed = static_cast<int>(rng.below(1u << 16));
    return g;
}

Skeleton random_skeleton(const PersonSpec& spec, int width, int height, Rng& rng) {
    float u = height / 96.f;
    float s = spec.body_scale * u;
    float tw = spec.torso_width_factor;

    Vec2 pelvis{width / 2.f + static_cast<float>(rng.uniform(-2.5, 2.5)) * u,
                0.56f * height + static_cast<float>(rng.uniform(-1.5, 1.5)) * u};
    Skeleton k;
    k[Joint::neck] = {pelvis.x, pelvis.y - 20.f * s};
    k[Joint::head] = {k[Joint::neck].x, k[Joint::neck].y - 7.5f * s};
    float sh = 6.5f * s * tw;
    k[Joint::l_shoulder] = {k[Joint::neck].x - sh, k[Joint::neck].y + 2.f * s};
    k[Joint::r_shoulder] = {k[Joint::neck].x + sh, k[Joint::neck].y + 2.f * s};
    float hip = 4.2f * s * tw;
    k[Joint::l_hip] = {pelvis.x - hip, pelvis.y};
    k[Joint::r_hip] = {pelvis.x + hip, pelvis.y};

    auto polar = [](const Vec2& from, float angle_deg, float len, float side) {
        float a = angle_deg * static_cast<float>(M_PI) / 180.f;
        return Vec2{from.x + side * std::sin(a) * len, from.y + std::cos(a) * len};
    };
    for (int side = 0; side < 2; side++) {
        float sgn = side == 0 ? -1.f : 1.f;
        Joint shoulder = side == 0 ? Joint::l_shoulder : Joint::r_shoulder;
        Joint elbow = side == 0 ? Joint::l_elbow : Joint::r_elbow;
        Joint wrist = side == 0 ? Joint::l_wrist : Joint::r_wrist;
        float a1 = static_cast<float>(rng.uniform(10.0, 38.0));
        float a2 = a1 + static_cast<float>(rng.uniform(-12.0, 16.0));
        k[elbow] = polar(k[shoulder], a1, 8.5f * s * spec.upper_arm, sgn);
        k[wrist] = polar(k[elbow], a2, 7.5f * s * spec.forearm, sgn);

        Joint hipj = side == 0 ? Joint::l_hip : Joint::r_hip;
        Joint knee = side == 0 ? Joint::l_knee : Joint::r_knee;
        Joint ankle = side == 0 ? Joint::l_ankle : Joint::r_ankle;
        float b1 = static_cast<float>(rng.uniform(2.0, 12.0));
        float b2 = b1 + static_cast<float>(rng.uniform(-6.0, 6.0));
        k[knee] = polar(k[hipj], b1, 10.5f * s * spec.thigh, sgn);
        k[ankle] = polar(k[knee], b2, 10.f * s * spec.shin, sgn);
    }

    for (auto& j : k.joints) {
        j.x = std::clamp(j.x, 2.f, width - 3.f);
        j.y = std::clamp(j.y, 2.f, height - 3.f);
    }
    validate_skeleton(k, width, height);
    return k;
}

Rgb random_background(Rng& rng, const std::vector<Rgb>& avoid) {
    for (int tries = 0; tries < 100; tries++) {
        Rgb bg{static_cast<float>(rng.uniform(0.05, 0.28)),
               static_cast<float>(rng.uniform(0.05, 0.28)),
               static_cast<float>(rng.uniform(0.05, 0.28))};
        bool ok = true;
        for (const Rgb& a : avoid)
            if (color_dist(bg, a) < 0.25f) ok = false;
        if (ok) return bg;
    }
    return {0.07f, 0.09f, 0.12f};
}

// ---------------------------------------------------------------------------
// rasterizer
// ---------------------------------------------------------------------------

namespace {

enum Label : uint8_t { kBg = 0, kSkin, kGarment, kFace, kHand };

struct Canvas {
    Image img;
    std::vector<uint8_t> label;

    Canvas(int w, int h, Rgb bg) : img(w, h), label(static_cast<size_t>(w) * h, kBg) {
        img.fill(bg.r, bg.g, bg.b);
    }

    void paint(int y, int x, Rgb c, uint8_t lab) {
        if (y < 0 || y >= img.height || x < 0 || x >= img.width) return;
        img.set_pixel(y, x, c.r, c.g, c.b);
        label[static_cast<size_t>(y) * img.width + x] = lab;
    }
};

// local texture coordinates: u along the piece in [0,1], v across in [-0.5, 0.5]
using ColorFn = std::function<Rgb(float u, float v)>;

void paint_capsule(Canvas& cv, Vec2 a, Vec2 b, float r, const ColorFn& color, uint8_t lab) {
    float dx = b.x - a.x, dy = b.y - a.y;
    float len2 = dx * dx + dy * dy;
    float len = std::sqrt(len2);
    int x0 = static_cast<int>(std::floor(std::min(a.x, b.x) - r)) - 1;
    int x1 = static_cast<int>(std::ceil(std::max(a.x, b.x) + r)) + 1;
    int y0 = static_cast<int>(std::floor(std::min(a.y, b.y) - r)) - 1;
    int y1 = static_cast<int>(std::ceil(std::max(a.y, b.y) + r)) + 1;
    for (int y = std::max(0, y0); y <= std::min(cv.img.height - 1, y1); y++) {
        for (int x = std::max(0, x0); x <= std::min(cv.img.width - 1, x1); x++) {
            float px = x + 0.5f - a.x, py = y + 0.5f - a.y;
            float t = len2 > 0 ? std::clamp((px * dx + py * dy) / len2, 0.f, 1.f) : 0.f;
            float ex = px - t * dx, ey = py - t * dy;
            if (ex * ex + ey * ey <= r * r) {
                float v = 0.f;
                if (len > 0) v = (px * (-dy / len) + py * (dx / len)) / (2.f * r);
                cv.paint(y, x, color(t, std::clamp(v, -0.5f, 0.5f)), lab);
            }
        }
    }
}

void paint_disk(Canvas& cv, Vec2 c, float r, Rgb color, uint8_t lab) {
    paint_capsule(cv, c, c, r, [color](float, float) { return color; }, lab);
}

// corners ordered TL, TR, BR, BL (a convex quad)
void paint_quad(Canvas& cv, const std::array<Vec2, 4>& q, const ColorFn& color, uint8_t lab) {
    float minx = q[0].x, maxx = q[0].x, miny = q[0].y, maxy = q[0].y;
    for (const auto& p : q) {
        minx = std::min(minx, p.x);
        maxx = std::max(maxx, p.x);
        miny = std::min(miny, p.y);
        maxy = std::max(maxy, p.y);
    }
    Vec2 top_mid{(q[0].x + q[1].x) / 2, (q[0].y + q[1].y) / 2};
    Vec2 bot_mid{(q[2].x + q[3].x) / 2, (q[2].y + q[3].y) / 2};
    float ax = bot_mid.x - top_mid.x, ay = bot_mid.y - top_mid.y;
    float alen2 = std::max(1e-6f, ax * ax + ay * ay);
    float alen = std::sqrt(alen2);
    float top_w = std::hypot(q[1].x - q[0].x, q[1].y - q[0].y);
    float bot_w = std::hypot(q[2].x - q[3].x, q[2].y - q[3].y);

    auto inside = [&](float px, float py) {
        float sign = 0;
        for (int i = 0; i < 4; i++) {
            const Vec2& p1 = q[i];
            const Vec2& p2 = q[(i + 1) % 4];
            float cr = (p2.x - p1.x) * (py - p1.y) - (p2.y - p1.y) * (px - p1.x);
            if (cr != 0) {
                if (sign == 0)
                    sign = cr > 0 ? 1.f : -1.f;
                else if ((cr > 0 ? 1.f : -1.f) != sign)
                    return false;
            }
        }
        return true;
    };

    for (int y = std::max(0, static_cast<int>(std::floor(miny)));
         y <= std::min(cv.img.height - 1, static_cast<int>(std::ceil(maxy))); y++) {
        for (int x = std::max(0, static_cast<int>(std::floor(minx)));
             x <= std::min(cv.img.width - 1, static_cast<int>(std::ceil(maxx))); x++) {
            float px = x + 0.5f, py = y + 0.5f;
            if (!inside(px, py)) continue;
            float u = std::clamp(((px - top_mid.x) * ax + (py - top_mid.y) * ay) / alen2, 0.f, 1.f);
            float w = top_w + (bot_w - top_w) * u;
            float v = ((px - top_mid.x) * (-ay / alen) + (py - top_mid.y) * (ax / alen)) /
                      std::max(1e-6f, w);
            cv.paint(y, x, color(u, std::clamp(v, -0.5f, 0.5f)), lab);
        }
    }
}

ColorFn solid(Rgb c) {
    return [c](float, float) { return c; };
}

// Texture in normalized piece coordinates so catalog and worn renders share
// the same pattern statistics.
ColorFn garment_texture(const GarmentSpec& g) {
    int seed = g.pattern_seed;
    switch (g.pattern) {
        case GarmentPattern::solid:
            return solid(g.base_color);
        case GarmentPattern::stripes: {
            int n = 4 + seed % 4;
            return [g, n](float u, float) {
                int band = static_cast<int>(std::floor(u * n));
                return band % 2 == 0 ? g.base_color : g.pattern_color;
            };
        }
        case GarmentPattern::dots: {
            int nu = 5 + seed % 3;
            int nv = 4 + (seed / 3) % 3;
            return [g, nu, nv](float u, float v) {
                float cu = u * nu - std::floor(u * nu) - 0.5f;
                float cvv = (v + 0.5f) * nv - std::floor((v + 0.5f) * nv) - 0.5f;
                return (cu * cu + cvv * cvv <= 0.30f * 0.30f) ? g.pattern_color : g.base_color;
            };
        }
        default: {  // logo: one off-center patch
            float u0 = 0.22f + 0.1f * (seed % 3) / 3.f;
            return [g, u0](float u, float v) {
                return (u >= u0 && u <= u0 + 0.2f && std::abs(v) <= 0.16f) ? g.pattern_color
                                                                           : g.base_color;
            };
        }
    }
}

struct BodyMetrics {
    float s;        // pixel scale: body_scale * height/96
    float arm_r, leg_r, torso_pad, head_r, hand_r;
};

BodyMetrics body_metrics(const PersonSpec& spec, int height) {
    float s = spec.body_scale * height / 96.f;
    return {s, 1.7f * s, 2.1f * s, 1.1f * s, 5.2f * s, 2.4f * s};
}

void draw_garment(Canvas& cv, const Skeleton& k, const PersonSpec& spec, const GarmentSpec& g,
                  int height) {
    BodyMetrics m = body_metrics(spec, height);
    ColorFn tex = garment_texture(g);
    float pad = m.torso_pad + 1.2f;

    Vec2 ls = k[Joint::l_shoulder], rs = k[Joint::r_shoulder];
    Vec2 lh = k[Joint::l_hip], rh = k[Joint::r_hip];

    auto widen = [](Vec2 a, Vec2 b, float amount) {
        float dx = b.x - a.x, dy = b.y - a.y;
        float len = std::max(1e-6f, std::hypot(dx, dy));
        return Vec2{a.x - dx / len * amount, a.y - dy / len * amount};
    };

    if (g.category == GarmentCategory::upper || g.category == GarmentCategory::dress) {
        // sleeves first so the torso texture stays on top at the seams
        for (int side = 0; side < 2; side++) {
            Joint shoulder = side == 0 ? Joint::l_shoulder : Joint::r_shoulder;
            Joint elbow = side == 0 ? Joint::l_elbow : Joint::r_elbow;
            Joint wrist = side == 0 ? Joint::l_wrist : Joint::r_wrist;
            Vec2 end = g.length == GarmentLength::short_cut ? k[elbow] : k[wrist];
            if (g.length == GarmentLength::long_cut) {
                // stop the sleeve short of the hand disk
                Vec2 e = k[elbow];
                float dx = end.x - e.x, dy = end.y - e.y;
                float len = std::max(1e-6f, std::hypot(dx, dy));
                float keep = std::max(0.f, len - m.hand_r * 0.6f);
                end = {e.x + dx / len * keep, e.y + dy / len * keep};
            }
            paint_capsule(cv, k[shoulder], end, m.arm_r + 1.2f, tex, kGarment);
        }
        if (g.category == GarmentCategory::upper) {
            std::array<Vec2, 4> quad = {widen(ls, rs, pad), widen(rs, ls, pad),
                                        widen(rh, lh, pad + 1.f), widen(lh, rh, pad + 1.f)};
            quad[2].y += 2.5f * m.s;
            quad[3].y += 2.5f * m.s;
            paint_quad(cv, quad, tex, kGarment);
        } else {
            // dress: shoulders down to the knee line, flared
            Vec2 lk = k[Joint::l_knee], rk = k[Joint::r_knee];
            float flare = 3.5f * m.s;
            std::array<Vec2, 4> quad = {widen(ls, rs, pad), widen(rs, ls, pad),
                                        widen(rk, lk, pad + flare), widen(lk, rk, pad + flare)};
            paint_quad(cv, quad, tex, kGarment);
        }
    } else {  // lower
        std::array<Vec2, 4> waist = {widen(lh, rh, pad + 1.f), widen(rh, lh, pad + 1.f),
                                     widen(rh, lh, pad + 1.f), widen(lh, rh, pad + 1.f)};
        waist[0].y -= 2.f * m.s;
        waist[1].y -= 2.f * m.s;
        waist[2].y += 3.f * m.s;
        waist[3].y += 3.f * m.s;
        paint_quad(cv, waist, tex, kGarment);
        for (int side = 0; side < 2; side++) {
            Joint hip = side == 0 ? Joint::l_hip : Joint::r_hip;
            Joint knee = side == 0 ? Joint::l_knee : Joint::r_knee;
            Joint ankle = side == 0 ? Joint::l_ankle : Joint::r_ankle;
            Vec2 end = g.length == GarmentLength::short_cut ? k[knee] : k[ankle];
            paint_capsule(cv, k[hip], end, m.leg_r + 1.2f, tex, kGarment);
        }
    }
}

}  // namespace

FigureRender generate_person(const PersonSpec& spec, const Skeleton& skeleton,
                             const GarmentSpec& garment, int width, int height, uint64_t seed) {
    validate_person_spec(spec);
    validate_garment_spec(garment);
    validate_skeleton(skeleton, width, height);

    Rng rng(mix_seed(seed, 0xB6));
    Rgb bg = random_background(rng, {});
    Canvas cv(width, height, bg);
    BodyMetrics m = body_metrics(spec, height);
    const Skeleton& k = skeleton;
    Rgb skin = spec.skin_tone;

    // skin: torso, neck, arms, legs
    {
        auto sk = solid(skin);
        std::array<Vec2, 4> torso = {k[Joint::l_shoulder], k[Joint::r_shoulder], k[Joint::r_hip],
                                     k[Joint::l_hip]};
        paint_quad(cv, torso, sk, kSkin);
        paint_capsule(cv, k[Joint::neck], k[Joint::head], 1.6f * m.s, sk, kSkin);
        paint_capsule(cv, k[Joint::l_shoulder], k[Joint::l_elbow], m.arm_r, sk, kSkin);
        paint_capsule(cv, k[Joint::l_elbow], k[Joint::l_wrist], m.arm_r, sk, kSkin);
        paint_capsule(cv, k[Joint::r_shoulder], k[Joint::r_elbow], m.arm_r, sk, kSkin);
        paint_capsule(cv, k[Joint::r_elbow], k[Joint::r_wrist], m.arm_r, sk, kSkin);
        paint_capsule(cv, k[Joint::l_hip], k[Joint::l_knee], m.leg_r, sk, kSkin);
        paint_capsule(cv, k[Joint::l_knee], k[Joint::l_ankle], m.leg_r, sk, kSkin);
        paint_capsule(cv, k[Joint::r_hip], k[Joint::r_knee], m.leg_r, sk, kSkin);
        paint_capsule(cv, k[Joint::r_knee], k[Joint::r_ankle], m.leg_r, sk, kSkin);
    }

    draw_garment(cv, k, spec, garment, height);

    // face: head disk with two eye dots, drawn after the garment so a dress
    // neckline can never cover it
    {
        Vec2 h = k[Joint::head];
        paint_disk(cv, h, m.head_r, skin, kFace);
        Rgb eye{0.05f, 0.05f, 0.05f};
        float er = std::max(0.7f, 0.16f * m.head_r);
        paint_capsule(cv, {h.x - 0.38f * m.head_r, h.y - 0.15f * m.head_r},
                      {h.x - 0.38f * m.head_r, h.y - 0.15f * m.head_r}, er, solid(eye), kFace);
        paint_capsule(cv, {h.x + 0.38f * m.head_r, h.y - 0.15f * m.head_r},
                      {h.x + 0.38f * m.head_r, h.y - 0.15f * m.head_r}, er, solid(eye), kFace);
    }

    // hands: slightly shaded disks at the wrists
    {
        Rgb hand{skin.r * 0.93f, skin.g * 0.93f, skin.b * 0.93f};
        paint_disk(cv, k[Joint::l_wrist], m.hand_r, hand, kHand);
        paint_disk(cv, k[Joint::r_wrist], m.hand_r, hand, kHand);
    }

    FigureRender out;
    out.image = std::move(cv.img);
    int w = width, h = height;
    out.silhouette = Mask(w, h);
    out.face = Mask(w, h);
    out.hand = Mask(w, h);
    out.garment = Mask(w, h);
    for (int y = 0; y < h; y++)
        for (int x = 0; x < w; x++) {
            uint8_t lab = cv.label[static_cast<size_t>(y) * w + x];
            out.silhouette.at(y, x) = lab != kBg;
            out.face.at(y, x) = lab == kFace;
            out.hand.at(y, x) = lab == kHand;
            out.garment.at(y, x) = lab == kGarment;
        }
    return out;
}

Image generate_catalog(const GarmentSpec& garment, int width, int height, uint64_t seed) {
    (void)seed;  // layout is canonical; the signature keeps generators uniform
    validate_garment_spec(garment);
    Canvas cv(width, height, {1.f, 1.f, 1.f});
    ColorFn tex = garment_texture(garment);
    float cx = width / 2.f, H = static_cast<float>(height), W = static_cast<float>(width);

    if (garment.category == GarmentCategory::upper) {
        float sleeve_len = garment.length == GarmentLength::short_cut ? 0.13f * H : 0.23f * H;
        for (int side = 0; side < 2; side++) {
            float sgn = side == 0 ? -1.f : 1.f;
            Vec2 a{cx + sgn * 0.18f * W, 0.30f * H};
            Vec2 b{a.x + sgn * 0.71f * sleeve_len, a.y + 0.71f * sleeve_len};
            paint_capsule(cv, a, b, 0.045f * H, tex, kGarment);
        }
        paint_quad(cv,
                   {Vec2{cx - 0.20f * W, 0.26f * H}, Vec2{cx + 0.20f * W, 0.26f * H},
                    Vec2{cx + 0.17f * W, 0.62f * H}, Vec2{cx - 0.17f * W, 0.62f * H}},
                   tex, kGarment);
    } else if (garment.category == GarmentCategory::lower) {
        paint_quad(cv,
                   {Vec2{cx - 0.17f * W, 0.26f * H}, Vec2{cx + 0.17f * W, 0.26f * H},
                    Vec2{cx + 0.17f * W, 0.36f * H}, Vec2{cx - 0.17f * W, 0.36f * H}},
                   tex, kGarment);
        float leg_end = garment.length == GarmentLength::short_cut ? 0.50f * H : 0.72f * H;
        for (int side = 0; side < 2; side++) {
            float sgn = side == 0 ? -1.f : 1.f;
            paint_capsule(cv, {cx + sgn * 0.09f * W, 0.33f * H}, {cx + sgn * 0.11f * W, leg_end},
                          0.065f * W, tex, kGarment);
        }
    } else {
        float sleeve_len = garment.length == GarmentLength::short_cut ? 0.12f * H : 0.22f * H;
        for (int side = 0; side < 2; side++) {
            float sgn = side == 0 ? -1.f : 1.f;
            Vec2 a{cx + sgn * 0.17f * W, 0.28f * H};
            Vec2 b{a.x + sgn * 0.71f * sleeve_len, a.y + 0.71f * sleeve_len};
            paint_capsule(cv, a, b, 0.04f * H, tex, kGarment);
        }
        paint_quad(cv,
                   {Vec2{cx - 0.19f * W, 0.25f * H}, Vec2{cx + 0.19f * W, 0.25f * H},
                    Vec2{cx + 0.30f * W, 0.74f * H}, Vec2{cx - 0.30f * W, 0.74f * H}},
                   tex, kGarment);
    }
    return cv.img;
}

Image render_pose_map(const Skeleton& skeleton, int width, int height) {
    // openpose-style palette, one fixed color per bone/joint slot
    static const std::array<Rgb, 18> palette = {{
        {1.f, 0.f, 0.f},   {1.f, 0.33f, 0.f}, {1.f, 0.67f, 0.f}, {1.f, 1.f, 0.f},
        {0.67f, 1.f, 0.f}, {0.33f, 1.f, 0.f}, {0.f, 1.f, 0.f},   {0.f, 1.f, 0.33f},
        {0.f, 1.f, 0.67f}, {0.f, 1.f, 1.f},   {0.f, 0.67f, 1.f}, {0.f, 0.33f, 1.f},
        {0.f, 0.f, 1.f},   {0.33f, 0.f, 1.f}, {0.67f, 0.f, 1.f}, {1.f, 0.f, 1.f},
        {1.f, 0.f, 0.67f}, {1.f, 0.f, 0.33f},
    }};
    Canvas cv(width, height, {0.f, 0.f, 0.f});
    const auto& bones = bone_topology();
    for (size_t i = 0; i < bones.size(); i++) {
        auto [a, b] = bones[i];
        paint_capsule(cv, skeleton[a], skeleton[b], 1.1f, solid(palette[i]), kSkin);
    }
    float jr = std::max(1.6f, height / 96.f * 1.8f);
    for (int j = 0; j < kJointCount; j++)
        paint_disk(cv, skeleton.joints[j], jr, palette[(j + 4) % palette.size()], kSkin);
    return cv.img;
}

Image degrade(const Image& img, const DegradeConfig& cfg, uint64_t seed) {
    check_config(cfg.blur_width >= 1 && cfg.blur_width % 2 == 1,
                 "degrade: blur_width must be odd and >= 1");
    check_config(cfg.resample_factor >= 1, "degrade: resample_factor must be >= 1");
    check_config(cfg.noise_sigma >= 0.f, "degrade: noise_sigma must be >= 0");
    Image out = box_blur(img, cfg.blur_width);
    if (cfg.resample_factor > 1 && img.width % cfg.resample_factor == 0 &&
        img.height % cfg.resample_factor == 0) {
        Image small = downsample_area(out, cfg.resample_factor);
        out = upsample_bilinear(small, img.width, img.height);
    }
    Rng rng(mix_seed(seed, 0xDE6));
    out = add_gaussian_noise(out, cfg.noise_sigma, rng);
    out.clamp01();
    return out;
}

// ---------------------------------------------------------------------------
// dataset build / load
// ---------------------------------------------------------------------------

namespace {

json rgb_to_json(const Rgb& c) { return json::array({c.r, c.g, c.b}); }
Rgb rgb_from_json(const json& j) { return {j.at(0), j.at(1), j.at(2)}; }

json garment_to_json(const GarmentSpec& g) {
    return json{{"category", to_string(g.category)},
                {"base_color", rgb_to_json(g.base_color)},
                {"pattern", to_string(g.pattern)},
                {"pattern_color", rgb_to_json(g.pattern_color)},
                {"length", to_string(g.length)},
                {"pattern_seed", g.pattern_seed}};
}

GarmentSpec garment_from_json(const json& j) {
    GarmentSpec g;
    g.category = garment_category_from_string(j.at("category"));
    g.base_color = rgb_from_json(j.at("base_color"));
    g.pattern = garment_pattern_from_string(j.at("pattern"));
    g.pattern_color = rgb_from_json(j.at("pattern_color"));
    g.length = garment_length_from_string(j.at("length"));
    g.pattern_seed = j.at("pattern_seed");
    return g;
}

json person_to_json(const PersonSpec& p) {
    return json{{"skin_tone", rgb_to_json(p.skin_tone)},
                {"body_scale", p.body_scale},
                {"torso_width_factor", p.torso_width_factor},
                {"limb_lengths",
                 {{"upper_arm", p.upper_arm},
                  {"forearm", p.forearm},
                  {"thigh", p.thigh},
                  {"shin", p.shin}}}};
}

PersonSpec person_from_json(const json& j) {
    PersonSpec p;
    p.skin_tone = rgb_from_json(j.at("skin_tone"));
    p.body_scale = j.at("body_scale");
    p.torso_width_factor = j.at("torso_width_factor");
    const json& l = j.at("limb_lengths");
    p.upper_arm = l.at("upper_arm");
    p.forearm = l.at("forearm");
    p.thigh = l.at("thigh");
    p.shin = l.at("shin");
    return p;
}

json skeleton_to_json(const Skeleton& s) {
    json j;
    for (int i = 0; i < kJointCount; i++)
        j[joint_names()[i]] = json::array({s.joints[i].x, s.joints[i].y});
    return j;
}

Skeleton skeleton_from_json(const json& j) {
    Skeleton s;
    for (int i = 0; i < kJointCount; i++) {
        const json& p = j.at(joint_names()[i]);
        s.joints[i] = {p.at(0), p.at(1)};
    }
    return s;
}

json record_to_json(const RecordMeta& r) {
    return json{{"format_version", "1"},
                {"index", r.index},
                {"seed", r.seed},
                {"pair_type", r.pair_type},
                {"paths",
                 {{"person", r.paths.person},
                  {"catalog", r.paths.catalog},
                  {"target", r.paths.target},
                  {"silhouette", r.paths.silhouette},
                  {"face", r.paths.face},
                  {"hand", r.paths.hand},
                  {"garment", r.paths.garment}}},
                {"person_spec", person_to_json(r.person)},
                {"worn_garment", garment_to_json(r.worn_garment)},
                {"target_garment", garment_to_json(r.target_garment)},
                {"skeleton", skeleton_to_json(r.skeleton)},
                {"background", rgb_to_json(r.background)},
                {"prompt_tokens", r.prompt_tokens}};
}

RecordMeta record_from_json(const json& j) {
    check(j.at("format_version") == "1", "manifest: unsupported record format_version");
    RecordMeta r;
    r.index = j.at("index");
    r.seed = j.at("seed");
    r.pair_type = j.at("pair_type");
    const json& p = j.at("paths");
    r.paths = {p.at("person"),     p.at("catalog"), p.at("target"), p.at("silhouette"),
               p.at("face"),       p.at("hand"),    p.at("garment")};
    r.person = person_from_json(j.at("person_spec"));
    r.worn_garment = garment_from_json(j.at("worn_garment"));
    r.target_garment = garment_from_json(j.at("target_garment"));
    r.skeleton = skeleton_from_json(j.at("skeleton"));
    r.background = rgb_from_json(j.at("background"));
    r.prompt_tokens = j.at("prompt_tokens").get<std::vector<int>>();
    return r;
}

GarmentCategory pick_category(const DatasetConfig& cfg, Rng& rng) {
    double total = cfg.upper_prob + cfg.lower_prob + cfg.dress_prob;
    double v = rng.uniform() * total;
    if (v < cfg.upper_prob) return GarmentCategory::upper;
    if (v < cfg.upper_prob + cfg.lower_prob) return GarmentCategory::lower;
    return GarmentCategory::dress;
}

std::string sample_stem(int index) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "images/%06d", index);
    return buf;
}

RecordMeta meta_of(const SampleRecord& s) {
    RecordMeta m;
    m.index = s.index;
    m.seed = s.seed;
    m.pair_type = s.pair_type;
    std::string stem = sample_stem(s.index);
    m.paths = {stem + "_person.png", stem + "_catalog.png", stem + "_target.png",
               stem + "_sil.png",    stem + "_face.png",    stem + "_hand.png",
               stem + "_garm.png"};
    m.person = s.person;
    m.worn_garment = s.worn_garment;
    m.target_garment = s.target_garment;
    m.skeleton = s.skeleton;
    m.background = s.background;
    m.prompt_tokens = s.prompt_tokens;
    return m;
}

void write_record_files(const std::string& root, const SampleRecord& s, const RecordMeta& m) {
    save_png(root + "/" + m.paths.person, s.person_image);
    save_png(root + "/" + m.paths.catalog, s.catalog_image);
    save_png(root + "/" + m.paths.target, s.target_image);
    save_mask_png(root + "/" + m.paths.silhouette, s.silhouette_mask);
    save_mask_png(root + "/" + m.paths.face, s.face_mask);
    save_mask_png(root + "/" + m.paths.hand, s.hand_mask);
    save_mask_png(root + "/" + m.paths.garment, s.garment_mask);
}

}  // namespace

SampleRecord build_sample(const DatasetConfig& cfg, uint64_t root_seed, int index) {
    check_config(cfg.width % cfg.downsample_factor == 0 &&
                     cfg.height % cfg.downsample_factor == 0,
                 "dataset: image size not divisible by downsample factor");
    SampleRecord s;
    s.index = index;
    s.seed = mix_seed(root_seed, static_cast<uint64_t>(index));
    Rng rng(s.seed);

    s.person = random_person_spec(rng);
    s.skeleton = random_skeleton(s.person, cfg.width, cfg.height, rng);
    s.worn_garment = random_garment_spec(rng, pick_category(cfg, rng));
    s.target_garment = random_garment_spec(rng, pick_category(cfg, rng));
    s.prompt_tokens = garment_prompt_tokens(s.target_garment);

    uint64_t render_seed = mix_seed(s.seed, 17);  // same background for both renders
    FigureRender person =
        generate_person(s.person, s.skeleton, s.worn_garment, cfg.width, cfg.height, render_seed);
    FigureRender target =
        generate_person(s.person, s.skeleton, s.target_garment, cfg.width, cfg.height, render_seed);

    s.person_image = std::move(person.image);
    s.target_image = std::move(target.image);
    s.catalog_image = generate_catalog(s.target_garment, cfg.width, cfg.height, s.seed);
    s.silhouette_mask = std::move(target.silhouette);
    s.face_mask = std::move(target.face);
    s.hand_mask = std::move(target.hand);
    s.garment_mask = std::move(target.garment);
    s.background = {s.person_image.at(0, 0, 0), s.person_image.at(1, 0, 0),
                    s.person_image.at(2, 0, 0)};
    return s;
}

DatasetManifest build_dataset(const DatasetConfig& cfg, uint64_t root_seed, int n,
                              const std::string& out_dir) {
    check_config(n >= 1, "build_dataset: n must be >= 1");
    std::error_code ec;
    fs::create_directories(out_dir + "/images", ec);
    if (ec) throw IoError("cannot create dataset directory: " + out_dir);

    DatasetManifest manifest;
    manifest.root_dir = out_dir;
    manifest.config = cfg;

    std::ofstream mf(out_dir + "/manifest.jsonl");
    if (!mf) throw IoError("cannot write manifest: " + out_dir + "/manifest.jsonl");
    for (int i = 0; i < n; i++) {
        SampleRecord s = build_sample(cfg, root_seed, i);
        RecordMeta m = meta_of(s);
        write_record_files(out_dir, s, m);
        mf << record_to_json(m).dump() << "\n";
        manifest.records.push_back(std::move(m));
    }
    mf.close();

    json cj{{"format_version", "1"},
            {"width", cfg.width},
            {"height", cfg.height},
            {"upper_prob", cfg.upper_prob},
            {"lower_prob", cfg.lower_prob},
            {"dress_prob", cfg.dress_prob},
            {"downsample_factor", cfg.downsample_factor},
            {"root_seed", root_seed}};
    std::ofstream cf(out_dir + "/config.json");
    if (!cf) throw IoError("cannot write dataset config: " + out_dir + "/config.json");
    cf << cj.dump(2) << "\n";
    return manifest;
}

DatasetManifest load_dataset(const std::string& dir) {
    DatasetManifest m;
    m.root_dir = dir;
    std::ifstream cf(dir + "/config.json");
    if (!cf) throw IoError("cannot read dataset config: " + dir + "/config.json");
    json cj = json::parse(cf);
    check(cj.at("format_version") == "1", "dataset: unsupported config format_version");
    m.config.width = cj.at("width");
    m.config.height = cj.at("height");
    m.config.upper_prob = cj.at("upper_prob");
    m.config.lower_prob = cj.at("lower_prob");
    m.config.dress_prob = cj.at("dress_prob");
    m.config.downsample_factor = cj.at("downsample_factor");

    std::ifstream mf(dir + "/manifest.jsonl");
    if (!mf) throw IoError("cannot read manifest: " + dir + "/manifest.jsonl");
    std::string line;
    while (std::getline(mf, line)) {
        if (line.empty()) continue;
        m.records.push_back(record_from_json(json::parse(line)));
    }
    return m;
}

SampleRecord load_record(const DatasetManifest& manifest, size_t i) {
    check(i < manifest.records.size(), "load_record: index out of range");
    const RecordMeta& r = manifest.records[i];
    SampleRecord s;
    s.index = r.index;
    s.seed = r.seed;
    s.pair_type = r.pair_type;
    s.person = r.person;
    s.worn_garment = r.worn_garment;
    s.target_garment = r.target_garment;
    s.skeleton = r.skeleton;
    s.background = r.background;
    s.prompt_tokens = r.prompt_tokens;
    const std::string& root = manifest.root_dir;
    s.person_image = load_png(root + "/" + r.paths.person);
    s.catalog_image = load_png(root + "/" + r.paths.catalog);
    s.target_image = load_png(root + "/" + r.paths.target);
    s.silhouette_mask = load_mask_png(root + "/" + r.paths.silhouette);
    s.face_mask = load_mask_png(root + "/" + r.paths.face);
    s.hand_mask = load_mask_png(root + "/" + r.paths.hand);
    s.garment_mask = load_mask_png(root + "/" + r.paths.garment);
    return s;
}

DatasetManifest build_refiner_pairs(const DatasetManifest& source, const DegradeConfig& cfg,
                                    uint64_t seed, const std::string& out_dir) {
    std::error_code ec;
    fs::create_directories(out_dir + "/images", ec);
    if (ec) throw IoError("cannot create refiner dataset directory: " + out_dir);

    DatasetManifest manifest;
    manifest.root_dir = out_dir;
    manifest.config = source.config;

    Image blank(source.config.width, source.config.height);
    blank.fill(1.f, 1.f, 1.f);

    std::ofstream mf(out_dir + "/manifest.jsonl");
    if (!mf) throw IoError("cannot write manifest: " + out_dir + "/manifest.jsonl");
    for (size_t i = 0; i < source.records.size(); i++) {
        SampleRecord src = load_record(source, i);
        SampleRecord s = src;
        s.pair_type = "refiner";
        s.seed = mix_seed(seed, static_cast<uint64_t>(i));
        // low-quality member goes in the person slot, high-quality stays the target
        s.person_image = degrade(src.target_image, cfg, s.seed);
        s.catalog_image = blank;
        s.prompt_tokens.clear();
        RecordMeta m = meta_of(s);
        write_record_files(out_dir, s, m);
        mf << record_to_json(m).dump() << "\n";
        manifest.records.push_back(std::move(m));
    }
    mf.close();

    json cj{{"format_version", "1"},
            {"width", manifest.config.width},
            {"height", manifest.config.height},
            {"upper_prob", manifest.config.upper_prob},
            {"lower_prob", manifest.config.lower_prob},
            {"dress_prob", manifest.config.dress_prob},
            {"downsample_factor", manifest.config.downsample_factor},
            {"root_seed", seed}};
    std::ofstream cf(out_dir + "/config.json");
    if (!cf) throw IoError("cannot write dataset config: " + out_dir + "/config.json");
    cf << cj.dump(2) << "\n";
    return manifest;
}

}  // namespace vton
