use dehnsurf::census::enumerate_triangulations;
use dehnsurf::fixtures;
use dehnsurf::io::{cubulation_to_string, triangulation_to_string};
use dehnsurf::surface2d::diagram_to_string;

fn main() {
    let dir = std::path::Path::new("fixtures");
    std::fs::write(dir.join("s3_coordinate_planes.cub"), cubulation_to_string(&fixtures::coordinate_plane_s3())).unwrap();
    std::fs::write(dir.join("t3_two_cubes.cub"), cubulation_to_string(&fixtures::two_cube_t3())).unwrap();
    std::fs::write(dir.join("double_tet.tri"), triangulation_to_string(&fixtures::double_tet())).unwrap();
    let one = &enumerate_triangulations(1).unwrap()[0];
    std::fs::write(dir.join("one_tet.tri"), triangulation_to_string(one)).unwrap();
    std::fs::write(dir.join("figure_eight.loop"), diagram_to_string(&fixtures::figure_eight_diagram())).unwrap();
}
