"""Id-addressed store resolving chunk ids to text and image ids to PNG bytes."""

from __future__ import annotations

import json
from pathlib import Path

from ..ingest.types import Chunk


class ObjectStore:
    def __init__(self, chunks: list[Chunk] | None = None, images: dict[str, bytes] | None = None):
        self.chunk_map: dict[str, Chunk] = {c.chunk_id: c for c in (chunks or [])}
        self.image_map: dict[str, bytes] = dict(images or {})

    def get_chunk(self, chunk_id: str) -> Chunk:
        return self.chunk_map[chunk_id]

    def get_image(self, image_id: str) -> bytes:
        return self.image_map[image_id]

    def verify_provenance(self, fused_records) -> list[str]:
        """Return every provenance id that fails to resolve."""
        missing = []
        for rec in fused_records:
            missing.extend(i for i in rec.text_ids if i not in self.chunk_map)
            missing.extend(i for i in rec.image_ids if i not in self.image_map)
        return missing

    def save(self, root: str | Path):
        root = Path(root)
        root.mkdir(parents=True, exist_ok=True)
        with open(root / "chunks.jsonl", "w", encoding="utf-8") as fh:
            for chunk in self.chunk_map.values():
                fh.write(json.dumps(chunk.to_dict(), ensure_ascii=False) + "\n")
        img_dir = root / "images"
        img_dir.mkdir(exist_ok=True)
        for image_id, data in self.image_map.items():
            (img_dir / f"{image_id.replace(':', '_')}.png").write_bytes(data)

    @classmethod
    def load(cls, root: str | Path) -> "ObjectStore":
        root = Path(root)
        chunks = []
        chunks_path = root / "chunks.jsonl"
        if chunks_path.exists():
            with open(chunks_path, encoding="utf-8") as fh:
                for line in fh:
                    if line.strip():
                        chunks.append(Chunk.from_dict(json.loads(line)))
        images = {}
        img_dir = root / "images"
        if img_dir.is_dir():
            for path in sorted(img_dir.glob("*.png")):
                images[path.stem.replace("_", ":")] = path.read_bytes()
        return cls(chunks, images)
