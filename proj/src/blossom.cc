// Copyright 2026 The shallowsep Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Primal-dual blossom algorithm following Galil's presentation ("Efficient algorithms for finding maximum matching
// in graphs", 1986). Dual variables are stored doubled so that all arithmetic stays integral.

#include "shallowsep/blossom.h"

#include <algorithm>
#include <stdexcept>

namespace shallowsep {

namespace {

class Blossom {
   public:
    Blossom(int n, const std::vector<WeightedEdge> &edges, bool maxcard)
        : n_(n), edges_(edges), maxcard_(maxcard) {}

    std::vector<int> run();

   private:
    int64_t slack(int k) const {
        const auto &e = edges_[k];
        return dual_[e.u] + dual_[e.v] - 2 * e.weight;
    }
    int ep(int p) const { return p % 2 == 0 ? edges_[p / 2].u : edges_[p / 2].v; }

    void leaves(int b, std::vector<int> &out) const {
        if (b < n_) {
            out.push_back(b);
            return;
        }
        for (int t : childs_[b]) {
            leaves(t, out);
        }
    }
    std::vector<int> leaves(int b) const {
        std::vector<int> r;
        leaves(b, r);
        return r;
    }
    static int wrap(int j, int len) { return ((j % len) + len) % len; }

    void assign_label(int w, int t, int p);
    int scan_blossom(int v, int w);
    void add_blossom(int base, int k);
    void expand_blossom(int b, bool endstage);
    void augment_blossom(int b, int v);
    void augment_matching(int k);

    int n_;
    const std::vector<WeightedEdge> &edges_;
    bool maxcard_;

    std::vector<std::vector<int>> neighbend_;
    std::vector<int> mate_;
    std::vector<int> label_;
    std::vector<int> labelend_;
    std::vector<int> inblossom_;
    std::vector<int> parent_;
    std::vector<std::vector<int>> childs_;
    std::vector<int> base_;
    std::vector<std::vector<int>> endps_;
    std::vector<int> bestedge_;
    std::vector<std::vector<int>> bestedges_;
    std::vector<bool> has_bestedges_;
    std::vector<int> unused_;
    std::vector<int64_t> dual_;
    std::vector<bool> allow_;
    std::vector<int> queue_;
};

void Blossom::assign_label(int w, int t, int p) {
    int b = inblossom_[w];
    label_[w] = label_[b] = t;
    labelend_[w] = labelend_[b] = p;
    bestedge_[w] = bestedge_[b] = -1;
    if (t == 1) {
        leaves(b, queue_);
    } else if (t == 2) {
        int base = base_[b];
        assign_label(ep(mate_[base]), 1, mate_[base] ^ 1);
    }
}

int Blossom::scan_blossom(int v, int w) {
    std::vector<int> path;
    int base = -1;
    while (v != -1 || w != -1) {
        int b = inblossom_[v];
        if (label_[b] & 4) {
            base = base_[b];
            break;
        }
        path.push_back(b);
        label_[b] = 5;
        if (labelend_[b] == -1) {
            v = -1;
        } else {
            v = ep(labelend_[b]);
            b = inblossom_[v];
            v = ep(labelend_[b]);
        }
        if (w != -1) {
            std::swap(v, w);
        }
    }
    for (int b : path) {
        label_[b] = 1;
    }
    return base;
}

void Blossom::add_blossom(int base, int k) {
    int v = edges_[k].u;
    int w = edges_[k].v;
    int bb = inblossom_[base];
    int bv = inblossom_[v];
    int bw = inblossom_[w];
    int b = unused_.back();
    unused_.pop_back();
    base_[b] = base;
    parent_[b] = -1;
    parent_[bb] = b;
    std::vector<int> path;
    std::vector<int> endps;
    while (bv != bb) {
        parent_[bv] = b;
        path.push_back(bv);
        endps.push_back(labelend_[bv]);
        v = ep(labelend_[bv]);
        bv = inblossom_[v];
    }
    path.push_back(bb);
    std::reverse(path.begin(), path.end());
    std::reverse(endps.begin(), endps.end());
    endps.push_back(2 * k);
    while (bw != bb) {
        parent_[bw] = b;
        path.push_back(bw);
        endps.push_back(labelend_[bw] ^ 1);
        w = ep(labelend_[bw]);
        bw = inblossom_[w];
    }
    label_[b] = 1;
    labelend_[b] = labelend_[bb];
    dual_[b] = 0;
    childs_[b] = path;
    endps_[b] = endps;
    for (int leaf : leaves(b)) {
        if (label_[inblossom_[leaf]] == 2) {
            queue_.push_back(leaf);
        }
        inblossom_[leaf] = b;
    }
    std::vector<int> bestedgeto(2 * n_, -1);
    for (int sub : path) {
        std::vector<std::vector<int>> nblists;
        if (!has_bestedges_[sub]) {
            for (int leaf : leaves(sub)) {
                std::vector<int> lst;
                for (int p : neighbend_[leaf]) {
                    lst.push_back(p / 2);
                }
                nblists.push_back(std::move(lst));
            }
        } else {
            nblists.push_back(bestedges_[sub]);
        }
        for (const auto &lst : nblists) {
            for (int kk : lst) {
                int i = edges_[kk].u;
                int j = edges_[kk].v;
                if (inblossom_[j] == b) {
                    std::swap(i, j);
                }
                int bj = inblossom_[j];
                if (bj != b && label_[bj] == 1 && (bestedgeto[bj] == -1 || slack(kk) < slack(bestedgeto[bj]))) {
                    bestedgeto[bj] = kk;
                }
            }
        }
        bestedges_[sub].clear();
        has_bestedges_[sub] = false;
        bestedge_[sub] = -1;
    }
    bestedges_[b].clear();
    for (int kk : bestedgeto) {
        if (kk != -1) {
            bestedges_[b].push_back(kk);
        }
    }
    has_bestedges_[b] = true;
    bestedge_[b] = -1;
    for (int kk : bestedges_[b]) {
        if (bestedge_[b] == -1 || slack(kk) < slack(bestedge_[b])) {
            bestedge_[b] = kk;
        }
    }
}

void Blossom::expand_blossom(int b, bool endstage) {
    std::vector<int> children = childs_[b];
    for (int s : children) {
        parent_[s] = -1;
        if (s < n_) {
            inblossom_[s] = s;
        } else if (endstage && dual_[s] == 0) {
            expand_blossom(s, endstage);
        } else {
            for (int leaf : leaves(s)) {
                inblossom_[leaf] = s;
            }
        }
    }
    if (!endstage && label_[b] == 2) {
        const std::vector<int> &ch = childs_[b];
        const std::vector<int> &en = endps_[b];
        int len = static_cast<int>(ch.size());
        int entrychild = inblossom_[ep(labelend_[b] ^ 1)];
        int j = static_cast<int>(std::find(ch.begin(), ch.end(), entrychild) - ch.begin());
        int jstep;
        int endptrick;
        if (j & 1) {
            j -= len;
            jstep = 1;
            endptrick = 0;
        } else {
            jstep = -1;
            endptrick = 1;
        }
        int p = labelend_[b];
        while (j != 0) {
            label_[ep(p ^ 1)] = 0;
            label_[ep(en[wrap(j - endptrick, len)] ^ endptrick ^ 1)] = 0;
            assign_label(ep(p ^ 1), 2, p);
            allow_[en[wrap(j - endptrick, len)] / 2] = true;
            j += jstep;
            p = en[wrap(j - endptrick, len)] ^ endptrick;
            allow_[p / 2] = true;
            j += jstep;
        }
        int bv = ch[wrap(j, len)];
        label_[ep(p ^ 1)] = label_[bv] = 2;
        labelend_[ep(p ^ 1)] = labelend_[bv] = p;
        bestedge_[bv] = -1;
        j += jstep;
        while (ch[wrap(j, len)] != entrychild) {
            bv = ch[wrap(j, len)];
            if (label_[bv] == 1) {
                j += jstep;
                continue;
            }
            int found = -1;
            for (int leaf : leaves(bv)) {
                if (label_[leaf] != 0) {
                    found = leaf;
                    break;
                }
            }
            if (found != -1) {
                label_[found] = 0;
                label_[ep(mate_[base_[bv]])] = 0;
                assign_label(found, 2, labelend_[found]);
            }
            j += jstep;
        }
    }
    label_[b] = labelend_[b] = -1;
    childs_[b].clear();
    endps_[b].clear();
    base_[b] = -1;
    bestedges_[b].clear();
    has_bestedges_[b] = false;
    bestedge_[b] = -1;
    unused_.push_back(b);
}

void Blossom::augment_blossom(int b, int v) {
    int t = v;
    while (parent_[t] != b) {
        t = parent_[t];
    }
    if (t >= n_) {
        augment_blossom(t, v);
    }
    std::vector<int> &ch = childs_[b];
    std::vector<int> &en = endps_[b];
    int len = static_cast<int>(ch.size());
    int i = static_cast<int>(std::find(ch.begin(), ch.end(), t) - ch.begin());
    int j = i;
    int jstep;
    int endptrick;
    if (i & 1) {
        j -= len;
        jstep = 1;
        endptrick = 0;
    } else {
        jstep = -1;
        endptrick = 1;
    }
    while (j != 0) {
        j += jstep;
        t = ch[wrap(j, len)];
        int p = en[wrap(j - endptrick, len)] ^ endptrick;
        if (t >= n_) {
            augment_blossom(t, ep(p));
        }
        j += jstep;
        t = ch[wrap(j, len)];
        if (t >= n_) {
            augment_blossom(t, ep(p ^ 1));
        }
        mate_[ep(p)] = p ^ 1;
        mate_[ep(p ^ 1)] = p;
    }
    std::rotate(ch.begin(), ch.begin() + i, ch.end());
    std::rotate(en.begin(), en.begin() + i, en.end());
    base_[b] = base_[ch[0]];
}

void Blossom::augment_matching(int k) {
    int v = edges_[k].u;
    int w = edges_[k].v;
    for (auto [s, p] : {std::pair<int, int>{v, 2 * k + 1}, std::pair<int, int>{w, 2 * k}}) {
        while (true) {
            int bs = inblossom_[s];
            if (bs >= n_) {
                augment_blossom(bs, s);
            }
            mate_[s] = p;
            if (labelend_[bs] == -1) {
                break;
            }
            int t = ep(labelend_[bs]);
            int bt = inblossom_[t];
            s = ep(labelend_[bt]);
            int j = ep(labelend_[bt] ^ 1);
            if (bt >= n_) {
                augment_blossom(bt, j);
            }
            mate_[j] = labelend_[bt];
            p = labelend_[bt] ^ 1;
        }
    }
}

std::vector<int> Blossom::run() {
    int nedge = static_cast<int>(edges_.size());
    if (nedge == 0 || n_ == 0) {
        return std::vector<int>(n_, -1);
    }
    int64_t maxweight = 0;
    for (const auto &e : edges_) {
        if (e.u < 0 || e.v < 0 || e.u >= n_ || e.v >= n_ || e.u == e.v) {
            throw std::invalid_argument("bad edge in matching graph");
        }
        maxweight = std::max(maxweight, e.weight);
    }
    neighbend_.assign(n_, {});
    for (int k = 0; k < nedge; k++) {
        neighbend_[edges_[k].u].push_back(2 * k + 1);
        neighbend_[edges_[k].v].push_back(2 * k);
    }
    mate_.assign(n_, -1);
    label_.assign(2 * n_, 0);
    labelend_.assign(2 * n_, -1);
    inblossom_.resize(n_);
    for (int i = 0; i < n_; i++) {
        inblossom_[i] = i;
    }
    parent_.assign(2 * n_, -1);
    childs_.assign(2 * n_, {});
    base_.assign(2 * n_, -1);
    for (int i = 0; i < n_; i++) {
        base_[i] = i;
    }
    endps_.assign(2 * n_, {});
    bestedge_.assign(2 * n_, -1);
    bestedges_.assign(2 * n_, {});
    has_bestedges_.assign(2 * n_, false);
    unused_.clear();
    for (int b = n_; b < 2 * n_; b++) {
        unused_.push_back(b);
    }
    dual_.assign(2 * n_, 0);
    for (int i = 0; i < n_; i++) {
        dual_[i] = maxweight;
    }
    allow_.assign(nedge, false);

    for (int stage = 0; stage < n_; stage++) {
        std::fill(label_.begin(), label_.end(), 0);
        std::fill(bestedge_.begin(), bestedge_.end(), -1);
        for (int b = n_; b < 2 * n_; b++) {
            bestedges_[b].clear();
            has_bestedges_[b] = false;
        }
        std::fill(allow_.begin(), allow_.end(), false);
        queue_.clear();
        for (int v = 0; v < n_; v++) {
            if (mate_[v] == -1 && label_[inblossom_[v]] == 0) {
                assign_label(v, 1, -1);
            }
        }
        bool augmented = false;
        while (true) {
            while (!queue_.empty() && !augmented) {
                int v = queue_.back();
                queue_.pop_back();
                for (int p : neighbend_[v]) {
                    int k = p / 2;
                    int w = ep(p);
                    if (inblossom_[v] == inblossom_[w]) {
                        continue;
                    }
                    int64_t kslack = 0;
                    if (!allow_[k]) {
                        kslack = slack(k);
                        if (kslack <= 0) {
                            allow_[k] = true;
                        }
                    }
                    if (allow_[k]) {
                        if (label_[inblossom_[w]] == 0) {
                            assign_label(w, 2, p ^ 1);
                        } else if (label_[inblossom_[w]] == 1) {
                            int base = scan_blossom(v, w);
                            if (base >= 0) {
                                add_blossom(base, k);
                            } else {
                                augment_matching(k);
                                augmented = true;
                                break;
                            }
                        } else if (label_[w] == 0) {
                            label_[w] = 2;
                            labelend_[w] = p ^ 1;
                        }
                    } else if (label_[inblossom_[w]] == 1) {
                        int b = inblossom_[v];
                        if (bestedge_[b] == -1 || kslack < slack(bestedge_[b])) {
                            bestedge_[b] = k;
                        }
                    } else if (label_[w] == 0) {
                        if (bestedge_[w] == -1 || kslack < slack(bestedge_[w])) {
                            bestedge_[w] = k;
                        }
                    }
                }
            }
            if (augmented) {
                break;
            }
            int deltatype = -1;
            int64_t delta = 0;
            int deltaedge = -1;
            int deltablossom = -1;
            if (!maxcard_) {
                deltatype = 1;
                delta = *std::min_element(dual_.begin(), dual_.begin() + n_);
            }
            for (int v = 0; v < n_; v++) {
                if (label_[inblossom_[v]] == 0 && bestedge_[v] != -1) {
                    int64_t d = slack(bestedge_[v]);
                    if (deltatype == -1 || d < delta) {
                        delta = d;
                        deltatype = 2;
                        deltaedge = bestedge_[v];
                    }
                }
            }
            for (int b = 0; b < 2 * n_; b++) {
                if (parent_[b] == -1 && label_[b] == 1 && bestedge_[b] != -1) {
                    int64_t d = slack(bestedge_[b]) / 2;
                    if (deltatype == -1 || d < delta) {
                        delta = d;
                        deltatype = 3;
                        deltaedge = bestedge_[b];
                    }
                }
            }
            for (int b = n_; b < 2 * n_; b++) {
                if (base_[b] >= 0 && parent_[b] == -1 && label_[b] == 2 && (deltatype == -1 || dual_[b] < delta)) {
                    delta = dual_[b];
                    deltatype = 4;
                    deltablossom = b;
                }
            }
            if (deltatype == -1) {
                deltatype = 1;
                delta = std::max<int64_t>(0, *std::min_element(dual_.begin(), dual_.begin() + n_));
            }
            for (int v = 0; v < n_; v++) {
                int l = label_[inblossom_[v]];
                if (l == 1) {
                    dual_[v] -= delta;
                } else if (l == 2) {
                    dual_[v] += delta;
                }
            }
            for (int b = n_; b < 2 * n_; b++) {
                if (base_[b] >= 0 && parent_[b] == -1) {
                    if (label_[b] == 1) {
                        dual_[b] += delta;
                    } else if (label_[b] == 2) {
                        dual_[b] -= delta;
                    }
                }
            }
            if (deltatype == 1) {
                break;
            } else if (deltatype == 2) {
                allow_[deltaedge] = true;
                int i = edges_[deltaedge].u;
                int j = edges_[deltaedge].v;
                if (label_[inblossom_[i]] == 0) {
                    std::swap(i, j);
                }
                queue_.push_back(i);
            } else if (deltatype == 3) {
                allow_[deltaedge] = true;
                queue_.push_back(edges_[deltaedge].u);
            } else if (deltatype == 4) {
                expand_blossom(deltablossom, false);
            }
        }
        if (!augmented) {
            break;
        }
        for (int b = n_; b < 2 * n_; b++) {
            if (parent_[b] == -1 && base_[b] >= 0 && label_[b] == 1 && dual_[b] == 0) {
                expand_blossom(b, true);
            }
        }
    }
    std::vector<int> out(n_, -1);
    for (int v = 0; v < n_; v++) {
        if (mate_[v] >= 0) {
            out[v] = ep(mate_[v]);
        }
    }
    return out;
}

}  // namespace

std::vector<int> max_weight_matching(int num_vertices, const std::vector<WeightedEdge> &edges, bool max_cardinality) {
    Blossom b(num_vertices, edges, max_cardinality);
    return b.run();
}

std::vector<int> min_cost_perfect_matching(int num_vertices, const std::vector<WeightedEdge> &edges) {
    if (num_vertices == 0) {
        return {};
    }
    if (num_vertices % 2 != 0) {
        throw std::runtime_error("no perfect matching: odd number of vertices");
    }
    int64_t maxcost = 0;
    for (const auto &e : edges) {
        if (e.weight < 0) {
            throw std::invalid_argument("negative cost");
        }
        maxcost = std::max(maxcost, e.weight);
    }
    // All perfect matchings have the same size, so maximizing sum(big - cost) minimizes the cost.
    std::vector<WeightedEdge> flipped;
    flipped.reserve(edges.size());
    for (const auto &e : edges) {
        flipped.push_back({e.u, e.v, maxcost + 1 - e.weight});
    }
    std::vector<int> mate = max_weight_matching(num_vertices, flipped, true);
    for (int v = 0; v < num_vertices; v++) {
        if (mate[v] < 0) {
            throw std::runtime_error("no perfect matching exists");
        }
    }
    return mate;
}

}  // namespace shallowsep
