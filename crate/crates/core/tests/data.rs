//! The embedded polynomial data must not drift from the reviewed files.

use einstein_sp::proofs::{data_file, DATA};
use sha2::{Digest, Sha256};

const SHA256: &[(&str, &str)] = &[
    ("b0", "c0d75d381ccfa0656418a7f1b51386cb81f749531b7bddeb6b7546412f230390"),
    ("b1", "993227ad6dde0d2a0acf6340f700acad7951da36b2c2b857c1d38f821dbdd539"),
    ("b2", "1c4c8681d3a56c3f14ffecaff322bdf0537a6f379f722d3271e993c4d916e3b7"),
    ("b3", "2e5ac49c6536edee5f9332d3f28fb591ddbdc2315456093280443398d5a03e6b"),
    ("b4", "998e3597beb76419bb87a155445644dfb7a3fda2a5d932261a9951300eac2872"),
    ("b5", "98bccdbc8f63356a49470187bc513c40d06298215152ac04fcb4bd1289cd8370"),
    ("b6", "0a2c75b8a0f27259c49ab499fceba91a4698ca07c3637cd1ed3cf752fd60ee11"),
    ("b7", "f7ef1781b9c8065bce7c0935275fbc47644ee441a01e6bc313cc26e1f287b73e"),
    ("b8", "f42b704bc5297192902058014b7f7977416235a88a5b6d63b377064dfebb88b4"),
    ("system_111", "83384e52fca25c30ac79fa256fea8205f734d9b73ec38cb470f290891e8473b6"),
    ("system_112", "901027a25bb1fa2aa65a1108227e3dcf3e5251dbefe462bfb4b414f9d9309945"),
    ("system_flag", "ee013761a94611a1a5a6bbd1d7a4b738943cd06846175b337c3f8c97a7aefe1d"),
    ("h_111", "45153b78081096a2b5550864ce6cf9df183725c16591503afdaffac0a3586a50"),
    ("u1", "40442dba5729868c613fc90484cf21c66ec1395a5e1242e3d8d50192b9a37fb0"),
    ("u1_at_0", "4bec8e1da661f07c4e44340349fef5858b7f84dcae3b206533760cdf2020d446"),
    ("u1_at_1", "24bee43b1d31399af281cabf54db004d5171ac85f8cbfbeefb46ef2b7c00307b"),
    ("u2", "caec01ebf542011f9ff3a585511bbe0be69fc3dcbbcb58fef2e591c86a5766d3"),
    ("u2_first_form", "8240eff30065b9040c296c4d78c153ec87d00aa46e57b1c713907dd69746dd06"),
    ("u_expansion", "32686f05f25503c13592034fbc2d4629d2b814a0bba57a8ed2cd9b782a4f3a12"),
    ("u_np", "d9f12680bdf4a7ce03f643e73c002f7b5158cc945ce4bd81008d0d52f925f5a2"),
];

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

#[test]
fn checksums_match() {
    assert_eq!(DATA.len(), SHA256.len());
    for (stem, text) in DATA {
        let want = SHA256.iter().find(|(s, _)| s == stem).map(|(_, h)| *h).expect("checksum listed");
        assert_eq!(hex(&Sha256::digest(text.as_bytes())), want, "{stem}.poly changed");
    }
}

#[test]
fn every_file_parses() {
    for (stem, _) in DATA {
        let f = data_file(stem).unwrap();
        assert!(!f.polys.is_empty(), "{stem}.poly is empty");
    }
}

#[test]
fn on_disk_copy_is_the_embedded_one() {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data");
    for (stem, text) in DATA {
        let disk = std::fs::read_to_string(dir.join(format!("{stem}.poly"))).unwrap();
        assert_eq!(&disk, text);
    }
}
